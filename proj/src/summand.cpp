#include "fsing/summand.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>

#include "fsing/error.hpp"

namespace fsing {

IntVec to_ints(const Monomial& m) {
  IntVec v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = m[i];
  return v;
}

// ---------------------------------------------------------------- semigroup

AffineSemigroup::AffineSemigroup(std::size_t n, IntMat generators)
    : n_(n), gens_(std::move(generators)), lattice_(gens_, n) {
  if (gens_.empty()) throw DomainError("semigroup needs at least one generator");
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (g.size() != n) throw DomainError("generator length does not match the ring");
    if (std::any_of(g.begin(), g.end(), [](std::int64_t x) { return x < 0; }))
      throw DomainError("generators must be nonnegative");
    if (std::all_of(g.begin(), g.end(), [](std::int64_t x) { return x == 0; }))
      throw DomainError("generators must be nonzero");
    for (std::size_t j = 0; j < i; ++j)
      if (gens_[j] == g) throw DomainError("generators must be pairwise distinct");
  }
  for (const auto& g : gens_)
    if (!lattice_.contains(g)) throw DomainError("lattice data inconsistent with generators");
}

std::int64_t AffineSemigroup::max_coordinate() const {
  std::int64_t m = 0;
  for (const auto& g : gens_)
    for (auto x : g) m = std::max(m, x);
  return m;
}

std::int64_t AffineSemigroup::max_degree() const {
  std::int64_t m = 0;
  for (const auto& g : gens_) m = std::max(m, std::accumulate(g.begin(), g.end(), std::int64_t{0}));
  return m;
}

// ---------------------------------------------------------------- embedding

struct SplitEmbedding::Cache {
  std::mutex mu;
  std::shared_ptr<const Presentation> presentation;
  std::map<IntVec, Decomposition> decompositions;
};

namespace {

std::atomic<std::uint64_t> next_embedding_id{1};

}  // namespace

SplitEmbedding::SplitEmbedding(AffineSemigroup sg, Ring ring, PurityCertificate cert)
    : sg_(std::move(sg)),
      ring_(std::move(ring)),
      cert_(std::move(cert)),
      id_(next_embedding_id++),
      cache_(std::make_shared<Cache>()) {}

bool SplitEmbedding::contains_exponent(std::span<const std::int64_t> m) const {
  if (std::any_of(m.begin(), m.end(), [](std::int64_t x) { return x < 0; })) return false;
  return sg_.group().contains(m);
}

bool SplitEmbedding::contains_monomial(const Monomial& m) const { return contains_exponent(to_ints(m)); }

bool SplitEmbedding::contains(const Polynomial& f) const {
  if (!same_ring(f.ring(), ring_)) throw RingMismatch();
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [&](const Polynomial::Term& t) { return contains_monomial(t.mono); });
}

Polynomial SplitEmbedding::generator(std::size_t i) const {
  Monomial m(ring_->n());
  for (std::size_t k = 0; k < ring_->n(); ++k) m[k] = static_cast<std::uint32_t>(sg_.generators()[i][k]);
  return Polynomial::monomial(ring_, std::move(m));
}

std::int64_t default_box(const IntMat& generators, std::uint64_t q_max) {
  std::int64_t d = 0;
  for (const auto& g : generators) d = std::max(d, std::accumulate(g.begin(), g.end(), std::int64_t{0}));
  std::int64_t box = 4 * d * static_cast<std::int64_t>(q_max);
  if (generators.empty()) return box;
  // Largest side whose cell count stays within the verification budget.
  const std::size_t n = generators.front().size();
  std::int64_t fit = 1;
  while (std::pow(static_cast<double>(fit + 2), static_cast<double>(n)) <= kPurityCells) ++fit;
  return std::max(std::min(box, fit), 2 * d);
}

SplitEmbedding build_embedding(const IntMat& generators, const Ring& ring, std::int64_t box) {
  AffineSemigroup sg(ring->n(), generators);
  const std::size_t n = ring->n();
  if (box < 2 * sg.max_degree())
    throw DomainError("purity box must be at least twice the largest generator degree");
  const std::uint64_t side = static_cast<std::uint64_t>(box) + 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= side;
    if (total > kPurityCells) throw ResourceBound("purity box too large to verify");
  }

  // Mark Σ inside the box by closure from the origin.
  std::vector<char> in_sigma(total, 0);
  auto encode = [&](const IntVec& v) {
    std::uint64_t k = 0;
    for (std::size_t i = n; i-- > 0;) k = k * side + static_cast<std::uint64_t>(v[i]);
    return k;
  };
  std::vector<IntVec> stack{IntVec(n, 0)};
  in_sigma[0] = 1;
  while (!stack.empty()) {
    IntVec v = std::move(stack.back());
    stack.pop_back();
    for (const auto& g : sg.generators()) {
      IntVec w(n);
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        w[i] = v[i] + g[i];
        inside = w[i] <= box;
      }
      if (!inside) continue;
      auto k = encode(w);
      if (in_sigma[k]) continue;
      in_sigma[k] = 1;
      stack.push_back(std::move(w));
    }
  }

  PurityCertificate cert{box, true, std::nullopt};
  IntVec v(n, 0);
  std::int64_t best_deg = -1;
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    std::int64_t deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<std::int64_t>(r % side);
      r /= side;
      deg += v[i];
    }
    if (in_sigma[k] || (best_deg >= 0 && deg >= best_deg)) continue;
    if (sg.group().contains(v)) {
      best_deg = deg;
      cert.witness = v;
    }
  }
  if (cert.witness) {
    std::string w = "(";
    for (std::size_t i = 0; i < n; ++i) w += (i ? "," : "") + std::to_string((*cert.witness)[i]);
    throw PurityRejected("semigroup is not pure: " + w + ") lies in G(Σ) ∩ ℕⁿ but not in Σ",
                         *cert.witness);
  }
  return SplitEmbedding(std::move(sg), ring, std::move(cert));
}

SplitEmbedding full_embedding(const Ring& ring, std::int64_t box) {
  IntMat gens;
  for (std::size_t i = 0; i < ring->n(); ++i) {
    IntVec e(ring->n(), 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return build_embedding(gens, ring, box);
}

Polynomial beta_project(const Polynomial& f, const SplitEmbedding& emb) {
  if (!same_ring(f.ring(), emb.ring())) throw RingMismatch();
  const std::int64_t box = emb.certificate().box;
  std::vector<Polynomial::Term> kept;
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (static_cast<std::int64_t>(t.mono[i]) > box)
        throw ResourceBound("monomial exceeds the purity box " + std::to_string(box));
    if (emb.contains_monomial(t.mono)) kept.push_back(t);
  }
  return Polynomial::from_terms(f.ring(), std::move(kept));
}

Polynomial frobenius_splitting(const Polynomial& f, const SplitEmbedding& emb, unsigned e) {
  const std::uint64_t q = prime_power(f.ring()->p(), e);
  std::vector<Polynomial::Term> out;
  for (const auto& t : f.terms()) {
    Monomial m(t.mono.size());
    bool zero_box = true;
    for (std::size_t i = 0; i < m.size() && zero_box; ++i) {
      zero_box = t.mono[i] % q == 0;
      m[i] = static_cast<std::uint32_t>(t.mono[i] / q);
    }
    if (zero_box) out.push_back({m, t.coeff});
  }
  return beta_project(Polynomial::from_terms(f.ring(), std::move(out)), emb);
}

// ---------------------------------------------------------------- presentation

namespace {

std::vector<std::string> aux_names(const RingDescriptor& ring, std::size_t r) {
  for (const char* stem : {"y", "g", "w", "t", "z", "aux"}) {
    std::vector<std::string> names;
    bool clash = false;
    for (std::size_t i = 1; i <= r && !clash; ++i) {
      names.push_back(std::string(stem) + std::to_string(i));
      clash = ring.index_of(names.back()).has_value();
    }
    if (!clash) return names;
  }
  throw DomainError("no free names for presentation variables");
}

}  // namespace

const Presentation& SplitEmbedding::presentation() const {
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->presentation) return *cache_->presentation;
  }
  const std::size_t n = ring_->n(), r = sg_.size();
  auto names = ring_->vars();
  auto aux = aux_names(*ring_, r);
  names.insert(names.end(), aux.begin(), aux.end());
  Ring joint = make_ring(ring_->p(), names);
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < r; ++i)
    gens.push_back(Polynomial::variable(joint, n + i) - remap(generator(i), joint, id));
  Ideal T = eliminate(Ideal(joint, gens), aux);
  auto pres = std::make_shared<const Presentation>(Presentation{T.ring(), Ideal(T.ring(), T.basis())});
  std::lock_guard lock(cache_->mu);
  if (!cache_->presentation) cache_->presentation = pres;
  return *cache_->presentation;
}

const Presentation& presentation(const SplitEmbedding& emb) { return emb.presentation(); }

namespace {

bool search(const IntMat& gens, std::size_t i, IntVec& rest, Decomposition& out) {
  if (std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; })) return true;
  if (i == gens.size()) return false;
  const auto& g = gens[i];
  std::int64_t most = -1;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] > 0) {
      std::int64_t c = rest[k] / g[k];
      most = most < 0 ? c : std::min(most, c);
    }
  for (std::int64_t c = most; c >= 0; --c) {
    for (std::size_t k = 0; k < g.size(); ++k) rest[k] -= c * g[k];
    out[i] = static_cast<std::uint32_t>(c);
    bool ok = search(gens, i + 1, rest, out);
    for (std::size_t k = 0; k < g.size(); ++k) rest[k] += c * g[k];
    if (ok) return true;
  }
  out[i] = 0;
  return false;
}

void enumerate(const IntMat& gens, std::size_t i, IntVec& rest, Decomposition& cur,
               std::vector<Decomposition>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (i == gens.size()) {
    if (std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; })) out.push_back(cur);
    return;
  }
  const auto& g = gens[i];
  std::int64_t most = -1;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g[k] > 0) {
      std::int64_t c = rest[k] / g[k];
      most = most < 0 ? c : std::min(most, c);
    }
  for (std::int64_t c = most; c >= 0; --c) {
    for (std::size_t k = 0; k < g.size(); ++k) rest[k] -= c * g[k];
    cur[i] = static_cast<std::uint32_t>(c);
    enumerate(gens, i + 1, rest, cur, out, limit);
    for (std::size_t k = 0; k < g.size(); ++k) rest[k] += c * g[k];
  }
  cur[i] = 0;
}

}  // namespace

Decomposition SplitEmbedding::decompose(const Monomial& m) const {
  IntVec key = to_ints(m);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->decompositions.find(key);
    if (it != cache_->decompositions.end()) return it->second;
  }
  Decomposition d(sg_.size(), 0);
  IntVec rest = key;
  if (!search(sg_.generators(), 0, rest, d))
    throw DomainError("exponent is not in the semigroup");
  std::lock_guard lock(cache_->mu);
  cache_->decompositions.emplace(std::move(key), d);
  return d;
}

Decomposition monomial_decompose(const Monomial& m, const SplitEmbedding& emb) { return emb.decompose(m); }

std::vector<Decomposition> all_decompositions(const Monomial& m, const SplitEmbedding& emb,
                                              std::size_t limit) {
  std::vector<Decomposition> out;
  Decomposition cur(emb.semigroup().size(), 0);
  IntVec rest = to_ints(m);
  enumerate(emb.semigroup().generators(), 0, rest, cur, out, limit);
  return out;
}

Polynomial lift(const Polynomial& f, const SplitEmbedding& emb, const Decomposer& decomposer) {
  if (!same_ring(f.ring(), emb.ring())) throw RingMismatch();
  const Ring& aux = emb.presentation().aux;
  std::vector<Polynomial::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Decomposition d = decomposer ? decomposer(t.mono) : emb.decompose(t.mono);
    Monomial y(aux->n());
    for (std::size_t i = 0; i < d.size(); ++i) y[i] = d[i];
    terms.push_back({std::move(y), t.coeff});
  }
  return Polynomial::from_terms(aux, std::move(terms));
}

Polynomial push_down(const Polynomial& g, const SplitEmbedding& emb) {
  const auto& gens = emb.semigroup().generators();
  std::vector<Polynomial::Term> terms;
  for (const auto& t : g.terms()) {
    Monomial m(emb.ring()->n());
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t k = 0; k < m.size(); ++k) {
        std::uint64_t s = m[k] + std::uint64_t{t.mono[i]} * static_cast<std::uint64_t>(gens[i][k]);
        if (s > kMaxExponent) throw OverflowError("exponent overflow (> 2^31)");
        m[k] = static_cast<std::uint32_t>(s);
      }
    terms.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(emb.ring(), std::move(terms));
}

namespace {

void require_in_r(const Polynomial& f, const SplitEmbedding& emb) {
  if (!emb.contains(f)) throw DomainError("element " + f.to_string() + " is not in the subring");
}

Ideal lifted_ideal(const std::vector<Polynomial>& J, const SplitEmbedding& emb, const Decomposer& d) {
  const Presentation& pres = emb.presentation();
  std::vector<Polynomial> gens;
  for (const auto& g : J) {
    require_in_r(g, emb);
    gens.push_back(lift(g, emb, d));
  }
  for (const auto& t : pres.toric.gens()) gens.push_back(t);
  return Ideal(pres.aux, std::move(gens));
}

}  // namespace

bool r_ideal_member(const Polynomial& f, const std::vector<Polynomial>& J, const SplitEmbedding& emb,
                    const Decomposer& decomposer) {
  require_in_r(f, emb);
  Ideal L = lifted_ideal(J, emb, decomposer);
  return ideal_member(lift(f, emb, decomposer), L);
}

bool r_ideal_contains(const std::vector<Polynomial>& J2, const std::vector<Polynomial>& J1,
                      const SplitEmbedding& emb) {
  Ideal L = lifted_ideal(J2, emb, {});
  return std::all_of(J1.begin(), J1.end(), [&](const Polynomial& g) {
    require_in_r(g, emb);
    return ideal_member(lift(g, emb), L);
  });
}

bool r_ideal_equal(const std::vector<Polynomial>& J1, const std::vector<Polynomial>& J2,
                   const SplitEmbedding& emb) {
  return r_ideal_contains(J1, J2, emb) && r_ideal_contains(J2, J1, emb);
}

}  // namespace fsing
