#include "fsing/ideal.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "fsing/error.hpp"
#include "fsing/modp.hpp"

namespace fsing {

GroebnerLimits& groebner_limits() {
  static GroebnerLimits limits;
  return limits;
}

namespace {

using Term = Polynomial::Term;
using Terms = std::vector<Term>;

Terms sorted_terms(const Polynomial& f, const MonomialOrder& order) {
  Terms t = f.terms();
  if (order.kind != OrderKind::Grevlex)
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return order.greater(a.mono, b.mono); });
  return t;
}

void make_monic(Terms& t, std::uint32_t p) {
  if (t.empty() || t[0].coeff == 1) return;
  std::uint32_t inv = modp::inv(t[0].coeff, p);
  for (auto& x : t) x.coeff = modp::mul(x.coeff, inv, p);
}

// h[from..] - c * m * g[1..], all lists sorted descending.
Terms sub_mul(const Terms& h, std::size_t from, const Terms& g, const Monomial& m, std::uint32_t c,
              const MonomialOrder& order, std::uint32_t p) {
  Terms out;
  out.reserve(h.size() - from + g.size());
  std::size_t i = from, j = 1;
  const std::uint32_t nc = modp::neg(c, p);
  while (i < h.size() && j < g.size()) {
    Monomial gm = g[j].mono * m;
    int cmp = order.compare(h[i].mono, gm);
    if (cmp > 0) {
      out.push_back(h[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(gm), modp::mul(g[j].coeff, nc, p)});
      ++j;
    } else {
      std::uint32_t v = modp::add(h[i].coeff, modp::mul(g[j].coeff, nc, p), p);
      if (v) out.push_back({h[i].mono, v});
      ++i;
      ++j;
    }
  }
  for (; i < h.size(); ++i) out.push_back(h[i]);
  for (; j < g.size(); ++j) out.push_back({g[j].mono * m, modp::mul(g[j].coeff, nc, p)});
  return out;
}

struct Reducer {
  const std::vector<Terms>& basis;
  const MonomialOrder& order;
  std::uint32_t p;
  std::size_t* budget;

  // Full reduction; the remainder has no term divisible by a leading monomial.
  Terms reduce(Terms h) const {
    Terms r;
    std::size_t pos = 0;
    while (pos < h.size()) {
      const Term& lt = h[pos];
      const Terms* div = nullptr;
      for (const auto& g : basis) {
        if (g[0].mono.divides(lt.mono)) {
          div = &g;
          break;
        }
      }
      if (!div) {
        r.push_back(lt);
        ++pos;
        continue;
      }
      if (budget) {
        if (*budget == 0) throw ResourceBound("Gröbner reduction budget exhausted");
        --*budget;
      }
      Monomial m = lt.mono / (*div)[0].mono;
      h = sub_mul(h, pos + 1, *div, m, lt.coeff, order, p);
      pos = 0;
    }
    return r;
  }
};

// Sugar strategy; ties broken by entry kind and pair index.
struct Entry {
  std::uint64_t sugar;
  int kind;  // 0 input generator, 1 critical pair
  std::size_t i, j;
  bool operator<(const Entry& o) const {
    return std::tie(sugar, kind, i, j) < std::tie(o.sugar, o.kind, o.i, o.j);
  }
};

std::vector<Terms> buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                              std::uint32_t p) {
  const GroebnerLimits limits = groebner_limits();
  std::size_t budget = limits.max_reductions;

  std::vector<Terms> inputs;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    Terms t = sorted_terms(g, order);
    make_monic(t, p);
    if (t[0].mono.is_one()) return {t};
    inputs.push_back(std::move(t));
  }

  std::vector<Terms> G;
  std::vector<std::uint64_t> sugar;
  std::set<Entry> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto total_degree = [](const Terms& t) {
    std::uint64_t d = 0;
    for (const auto& x : t) d = std::max(d, x.mono.degree());
    return d;
  };
  for (std::size_t k = 0; k < inputs.size(); ++k) queue.insert({total_degree(inputs[k]), 0, k, 0});

  auto add = [&](Terms t, std::uint64_t s) {
    make_monic(t, p);
    if (t[0].mono.degree() > limits.max_degree)
      throw ResourceBound("Gröbner degree cap exceeded");
    if (G.size() >= limits.max_basis) throw ResourceBound("Gröbner basis size cap exceeded");
    std::size_t k = G.size();
    G.push_back(std::move(t));
    sugar.push_back(s);
    for (std::size_t i = 0; i < k; ++i) {
      const Monomial& a = G[i][0].mono;
      const Monomial& b = G[k][0].mono;
      bool coprime = true;
      for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v] && b[v]) {
          coprime = false;
          break;
        }
      if (coprime) continue;
      const std::uint64_t l = a.lcm(b).degree();
      queue.insert({std::max(sugar[i] + l - a.degree(), sugar[k] + l - b.degree()), 1, i, k});
      pending.insert({i, k});
    }
  };

  while (!queue.empty()) {
    Entry e = *queue.begin();
    queue.erase(queue.begin());
    Terms h;
    const std::uint64_t s = e.sugar;
    if (e.kind == 0) {
      h = std::move(inputs[e.i]);
    } else {
      pending.erase({e.i, e.j});
      const Monomial lcm = G[e.i][0].mono.lcm(G[e.j][0].mono);
      bool chain = false;
      for (std::size_t k = 0; k < G.size() && !chain; ++k) {
        if (k == e.i || k == e.j || !G[k][0].mono.divides(lcm)) continue;
        auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        chain = !pending.count(key(e.i, k)) && !pending.count(key(e.j, k));
      }
      if (chain) continue;
      Terms a = G[e.i];
      Monomial mi = lcm / G[e.i][0].mono;
      for (auto& t : a) t.mono = t.mono * mi;
      h = sub_mul(a, 0, G[e.j], lcm / G[e.j][0].mono, 1, order, p);
      // sub_mul keeps a[0]; it cancels against the skipped leading term of G[j].
      h.erase(h.begin());
    }
    Reducer red{G, order, p, &budget};
    Terms r = red.reduce(std::move(h));
    if (r.empty()) continue;
    if (r[0].mono.is_one()) {
      make_monic(r, p);
      return {r};
    }
    add(std::move(r), s);
  }
  return G;
}

std::vector<Terms> reduce_basis(std::vector<Terms> G, const MonomialOrder& order, std::uint32_t p) {
  std::sort(G.begin(), G.end(),
            [&](const Terms& a, const Terms& b) { return order.compare(a[0].mono, b[0].mono) < 0; });
  std::vector<Terms> minimal;
  for (auto& g : G) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(),
                                 [&](const Terms& m) { return m[0].mono.divides(g[0].mono); });
    if (!redundant) minimal.push_back(std::move(g));
  }
  std::vector<Terms> out;
  out.reserve(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Terms> others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.push_back(minimal[l]);
    Reducer red{others, order, p, nullptr};
    Terms tail(minimal[k].begin() + 1, minimal[k].end());
    Terms r = red.reduce(std::move(tail));
    Terms g;
    g.reserve(r.size() + 1);
    g.push_back(minimal[k][0]);
    for (auto& t : r) g.push_back(std::move(t));
    make_monic(g, p);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Ideal

struct Ideal::Slot {
  MonomialOrder order;
  std::vector<Polynomial> basis;
  std::vector<Terms> sorted;
};

struct Ideal::Cache {
  std::mutex mu;
  std::vector<std::shared_ptr<const Slot>> slots;

  std::shared_ptr<const Slot> find(const MonomialOrder& order) {
    std::lock_guard lock(mu);
    for (const auto& s : slots)
      if (s->order == order) return s;
    return nullptr;
  }
};

Ideal::Ideal(Ring ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (!same_ring(g.ring(), ring_)) throw RingMismatch();
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal::Ideal(const Polynomial& f) : Ideal(f.ring(), {f}) {}

const std::vector<Polynomial>& Ideal::basis(const MonomialOrder& order) const {
  return slot(order).basis;
}

const Ideal::Slot& Ideal::slot(const MonomialOrder& order) const {
  if (auto s = cache_->find(order)) return *s;
  std::vector<Terms> G = reduce_basis(buchberger(gens_, order, ring_->p()), order, ring_->p());
  auto fresh = std::make_shared<Slot>();
  fresh->order = order;
  for (const auto& g : G) fresh->basis.push_back(Polynomial::from_terms(ring_, g));
  fresh->sorted = std::move(G);
  std::lock_guard lock(cache_->mu);
  for (const auto& s : cache_->slots)
    if (s->order == order) return *s;
  cache_->slots.push_back(fresh);
  return *cache_->slots.back();
}

Polynomial Ideal::reduce(const Polynomial& f, const MonomialOrder& order) const {
  if (!same_ring(f.ring(), ring_)) throw RingMismatch();
  const Slot& s = slot(order);
  Reducer red{s.sorted, order, ring_->p(), nullptr};
  return Polynomial::from_terms(ring_, red.reduce(sorted_terms(f, order)));
}

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b[0].is_constant();
}

bool Ideal::is_monomial() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_monomial(); });
}

namespace {

std::string join(const std::vector<Polynomial>& gens) {
  std::ostringstream os;
  os << '(';
  if (gens.empty()) os << '0';
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << ", ";
    os << gens[i].to_string();
  }
  os << ')';
  return os.str();
}

}  // namespace

std::string Ideal::to_string() const { return join(gens_); }
std::string Ideal::canonical_string() const { return join(basis()); }

std::vector<Polynomial> groebner_basis(const Ideal& I, const MonomialOrder& order) {
  return I.basis(order);
}

const Monomial& leading_monomial(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw DomainError("zero polynomial has no leading monomial");
  const auto& t = f.terms();
  if (order.kind == OrderKind::Grevlex) return t[0].mono;
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i)
    if (order.greater(t[i].mono, t[best].mono)) best = i;
  return t[best].mono;
}

Polynomial normal_form(const Polynomial& f, const Ideal& I, const MonomialOrder& order) {
  return I.reduce(f, order);
}

bool ideal_member(const Polynomial& f, const Ideal& I) {
  if (!same_ring(f.ring(), I.ring())) throw RingMismatch();
  if (f.is_zero()) return true;
  const auto& b = I.basis();
  if (b.empty()) return false;
  if (b.size() == 1 && b[0].is_constant()) return true;
  if (std::all_of(b.begin(), b.end(), [](const Polynomial& g) { return g.is_monomial(); })) {
    // Monomial basis: membership is termwise divisibility.
    return std::all_of(f.terms().begin(), f.terms().end(), [&](const Term& t) {
      return std::any_of(b.begin(), b.end(),
                         [&](const Polynomial& g) { return g.terms()[0].mono.divides(t.mono); });
    });
  }
  return normal_form(f, I).is_zero();
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw RingMismatch();
  return std::all_of(J.gens().begin(), J.gens().end(),
                     [&](const Polynomial& g) { return ideal_member(g, I); });
}

bool ideal_equal(const Ideal& I, const Ideal& J) { return ideal_contains(I, J) && ideal_contains(J, I); }

std::string fresh_name(const RingDescriptor& ring, const std::string& stem) {
  if (!ring.index_of(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string s = stem + std::to_string(k);
    if (!ring.index_of(s)) return s;
  }
}

Polynomial remap(const Polynomial& f, const Ring& target, const std::vector<std::size_t>& index_map) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->n());
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      m[index_map.at(i)] = t.mono[i];
    }
    terms.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& keep_vars) {
  const Ring& ring = I.ring();
  std::vector<bool> keep(ring->n(), false);
  for (const auto& v : keep_vars) {
    auto idx = ring->index_of(v);
    if (!idx) throw DomainError("unknown variable '" + v + "'");
    keep[*idx] = true;
  }
  std::vector<std::string> order_names, kept_names;
  std::vector<std::size_t> to_block(ring->n());
  for (std::size_t i = 0; i < ring->n(); ++i)
    if (!keep[i]) {
      to_block[i] = order_names.size();
      order_names.push_back(ring->vars()[i]);
    }
  const std::size_t k = order_names.size();
  std::vector<std::size_t> back;
  for (std::size_t i = 0; i < ring->n(); ++i)
    if (keep[i]) {
      to_block[i] = order_names.size();
      order_names.push_back(ring->vars()[i]);
      kept_names.push_back(ring->vars()[i]);
    }
  Ring block_ring = make_ring(ring->p(), order_names);
  Ring kept_ring = make_ring(ring->p(), kept_names);
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(remap(g, block_ring, to_block));
  Ideal J(block_ring, gens);
  std::vector<std::size_t> to_kept(block_ring->n(), 0);
  for (std::size_t i = k; i < block_ring->n(); ++i) to_kept[i] = i - k;
  std::vector<Polynomial> out;
  for (const auto& g : J.basis(MonomialOrder::block_lex_grevlex(k))) {
    bool free = std::all_of(g.terms().begin(), g.terms().end(), [&](const Term& t) {
      for (std::size_t i = 0; i < k; ++i)
        if (t.mono[i]) return false;
      return true;
    });
    if (free) out.push_back(remap(g, kept_ring, to_kept));
  }
  return Ideal(kept_ring, std::move(out));
}

bool radical_member(const Polynomial& f, const Ideal& I) {
  if (!same_ring(f.ring(), I.ring())) throw RingMismatch();
  const Ring& ring = I.ring();
  auto names = ring->vars();
  names.push_back(fresh_name(*ring, "t"));
  Ring ext = make_ring(ring->p(), names);
  std::vector<std::size_t> id(ring->n());
  std::iota(id.begin(), id.end(), 0);
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(remap(g, ext, id));
  Polynomial t = Polynomial::variable(ext, ring->n());
  gens.push_back(Polynomial::constant(ext, 1) - t * remap(f, ext, id));
  return Ideal(ext, gens).is_unit();
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw RingMismatch();
  auto gens = I.gens();
  gens.insert(gens.end(), J.gens().begin(), J.gens().end());
  return Ideal(I.ring(), gens);
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw RingMismatch();
  std::vector<Polynomial> gens;
  for (const auto& a : I.gens())
    for (const auto& b : J.gens()) gens.push_back(a * b);
  return Ideal(I.ring(), minimalize_monomials(std::move(gens)));
}

std::vector<Polynomial> minimalize_monomials(std::vector<Polynomial> gens) {
  std::vector<Polynomial> mono, other;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    (g.is_monomial() ? mono : other).push_back(std::move(g));
  }
  std::sort(mono.begin(), mono.end(), [](const Polynomial& a, const Polynomial& b) {
    return MonomialOrder::grevlex().compare(a.terms()[0].mono, b.terms()[0].mono) < 0;
  });
  std::vector<Polynomial> out;
  for (auto& g : mono) {
    const Monomial& m = g.terms()[0].mono;
    bool redundant = std::any_of(out.begin(), out.end(),
                                 [&](const Polynomial& k) { return k.terms()[0].mono.divides(m); });
    if (!redundant) out.push_back(Polynomial::monomial(g.ring(), m));
  }
  std::vector<Polynomial> dedup;
  for (auto& g : other)
    if (std::find(dedup.begin(), dedup.end(), g) == dedup.end()) dedup.push_back(std::move(g));
  out.insert(out.end(), dedup.begin(), dedup.end());
  return out;
}

Ideal ideal_power(const Ideal& I, std::uint64_t t) {
  const Ring& ring = I.ring();
  if (t == 0) return Ideal::unit(ring);
  const auto& g = I.gens();
  if (g.empty()) return Ideal::zero(ring);
  if (g.size() == 1) return Ideal(ring, {pow(g[0], t)});
  // Enumerate exponent compositions a_1 + ... + a_k = t.
  const std::size_t k = g.size();
  std::vector<std::vector<Polynomial>> powers(k);
  for (std::size_t i = 0; i < k; ++i) {
    powers[i].push_back(Polynomial::constant(ring, 1));
    for (std::uint64_t a = 1; a <= t; ++a) powers[i].push_back(powers[i].back() * g[i]);
  }
  std::vector<Polynomial> out;
  std::vector<std::uint64_t> a(k, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t left, const Polynomial& acc) -> void {
    if (i + 1 == k) {
      out.push_back(acc * powers[i][left]);
      return;
    }
    for (std::uint64_t x = 0; x <= left; ++x) self(self, i + 1, left - x, acc * powers[i][x]);
  };
  rec(rec, 0, t, Polynomial::constant(ring, 1));
  return Ideal(ring, minimalize_monomials(std::move(out)));
}

}  // namespace fsing
