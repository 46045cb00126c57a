#include "fsing/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fsing/error.hpp"

namespace fsing {

namespace {

constexpr std::uint64_t kMaxProducts = 1'000'000;
constexpr std::uint64_t kDirectTerms = 50'000;

const Ring& ring_of(const Gens& a, const Gens& b = {}) {
  if (!a.empty()) return a[0].ring();
  if (!b.empty()) return b[0].ring();
  throw DomainError("empty generator list");
}

void require_ring(const Gens& gens, const Ring& ring, Where where) {
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch();
    if (where.in_r() && !where.emb->contains(g))
      throw DomainError("element " + g.to_string() + " is not in the subring");
  }
  if (where.in_r() && !same_ring(where.emb->ring(), ring)) throw RingMismatch();
}

Polynomial power_mod(const Polynomial& f, std::uint64_t k, const Ideal& A) {
  Polynomial result = A.reduce(Polynomial::constant(f.ring(), 1));
  Polynomial base = A.reduce(f);
  while (k) {
    if (k & 1) result = A.reduce(result * base);
    k >>= 1;
    if (k) base = A.reduce(base * base);
  }
  return result;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

// Calls visit(exponents) for each composition of t into k parts; stops when
// visit returns false. Returns false when stopped.
bool for_each_composition(std::size_t k, std::uint64_t t, const std::function<bool(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> a(k, 0);
  std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i + 1 == k) {
      a[i] = left;
      return visit(a);
    }
    for (std::uint64_t c = left + 1; c-- > 0;) {
      a[i] = c;
      if (!rec(i + 1, left - c)) return false;
    }
    return true;
  };
  return rec(0, t);
}

// Decides J^t ⊆ a^[q] for varying t.
class Containment {
public:
  Containment(Gens J, const Gens& a, unsigned e, Where where, const NuOptions& opt)
      : J_(std::move(J)), where_(where), opt_(opt), ring_(ring_of(a)),
        A_(bracket_power(Ideal(ring_, a), FrobeniusContext(ring_, e))) {
    J_.erase(std::remove_if(J_.begin(), J_.end(), [](const Polynomial& g) { return g.is_zero(); }), J_.end());
  }

  const Ideal& bracket() const { return A_; }

  bool contained(std::uint64_t t) {
    if (J_.empty()) return t > 0 || A_.is_unit();
    if (binomial_capped(t + J_.size() - 1, J_.size() - 1, kMaxProducts) > kMaxProducts)
      throw ResourceBound("too many generators of J^t");
    if (where_.in_r() && opt_.r_presentation) return contained_presentation(t);
    return for_each_composition(J_.size(), t, [&](const std::vector<std::uint64_t>& a) {
      Polynomial prod = Polynomial::constant(ring_, 1);
      for (std::size_t i = 0; i < a.size() && !prod.is_zero(); ++i)
        if (a[i]) prod = A_.reduce(prod * power(i, a[i]));
      prod = A_.reduce(prod);
      return prod.is_zero();
    });
  }

  // Same question through plain products and ideal membership.
  bool contained_direct(std::uint64_t t) {
    if (J_.size() != 1 || binomial_capped(t + J_[0].size() - 1, J_[0].size() - 1, kDirectTerms) > kDirectTerms)
      return contained(t);
    return ideal_member(pow(J_[0], t), A_);
  }

private:
  const Polynomial& power(std::size_t i, std::uint64_t k) {
    auto key = std::make_pair(i, k);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(key, power_mod(J_[i], k, A_)).first;
    return it->second;
  }

  bool contained_presentation(std::uint64_t t) {
    const Gens& aq = A_.gens();
    return for_each_composition(J_.size(), t, [&](const std::vector<std::uint64_t>& a) {
      Polynomial prod = Polynomial::constant(ring_, 1);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]) prod = prod * pow(J_[i], a[i]);
      return r_ideal_member(prod, aq, *where_.emb);
    });
  }

  Gens J_;
  Where where_;
  NuOptions opt_;
  Ring ring_;
  Ideal A_;
  std::map<std::pair<std::size_t, std::uint64_t>, Polynomial> memo_;
};

// Smallest N with g^N ∈ A.
std::uint64_t radical_exponent(const Polynomial& g, const Ideal& A) {
  if (g.is_zero()) return 1;
  std::uint64_t hi = 1;
  while (!power_mod(g, hi, A).is_zero()) {
    if (hi > (std::uint64_t{1} << 24)) throw ResourceBound("radical exponent too large");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // g^lo ∉ A, or lo = 0
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (power_mod(g, mid, A).is_zero() ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

bool power_contained(const Gens& J, std::uint64_t t, const Gens& a, unsigned e, Where where, const NuOptions& opt) {
  const Ring& ring = ring_of(a, J);
  require_ring(J, ring, where);
  require_ring(a, ring, where);
  return Containment(J, a, e, where, opt).contained(t);
}

NuResult nu(const Gens& J, const Gens& a, unsigned e, Where where, const NuOptions& opt) {
  if (J.empty() || a.empty()) throw DomainError("ν needs nonempty J and a");
  const Ring& ring = ring_of(a);
  require_ring(J, ring, where);
  require_ring(a, ring, where);
  Ideal A(ring, a);
  if (A.is_unit()) throw DomainError("ν needs a proper ideal a");
  for (const auto& g : J)
    if (!radical_member(g, A)) throw DomainError("J is not contained in the radical of a: " + g.to_string());

  NuResult r;
  r.J = J;
  r.a = a;
  r.where = where.tag();
  r.p = ring->p();
  r.e = e;
  r.q = prime_power(ring->p(), e);

  // J^N ⊆ a, and a^{μ(q-1)+1} ⊆ a^[q] for μ generators.
  std::uint64_t N = 1;
  for (const auto& g : J) N += radical_exponent(g, A) - 1;
  const std::uint64_t mu = A.gens().size();
  unsigned __int128 seed = static_cast<unsigned __int128>(N) * (mu * (r.q - 1) + 1);
  if (seed > (std::uint64_t{1} << 40)) throw ResourceBound("ν search bound too large");
  r.seed = static_cast<std::uint64_t>(seed);

  Containment C(J, a, e, where, opt);
  std::uint64_t lo = 0, hi = r.seed;
  if (C.contained(lo)) throw Error("J^0 contained in a proper bracket power");
  if (!C.contained(hi)) throw Error("ν search bound violated");
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (C.contained(mid) ? hi : lo) = mid;
  }
  r.value = lo;
  r.ratio = Fraction(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(r.q));
  if (opt.recheck) {
    r.bounds_checked = !C.contained_direct(r.value) && C.contained_direct(r.value + 1);
    if (!r.bounds_checked) throw Error("ν post-check failed");
  }
  return r;
}

ThresholdEstimate fpt_truncation(const Polynomial& f, const Gens& m, unsigned e_max, Where where) {
  if (e_max == 0) throw DomainError("e must be at least 1");
  ThresholdEstimate est;
  for (unsigned e = 1; e <= e_max; ++e) {
    auto r = nu({f}, m, e, where);
    if (!est.steps.empty() && r.ratio < est.steps.back().ratio) est.monotone = false;
    est.steps.push_back({e, r.value, r.ratio});
  }
  return est;
}

Gens level_ideal(const Gens& I, std::uint64_t a, unsigned e, Where where, bool* stable) {
  const Ring& ring = ring_of(I);
  require_ring(I, ring, where);
  Gens powers = ideal_power(Ideal(ring, I), a).gens();
  if (!where.in_r()) return eth_root(Ideal(ring, powers), FrobeniusContext(ring, e)).gens();
  auto img = cartier_image(powers, *where.emb, e);
  if (stable && !img.stable) *stable = false;
  return img.image;
}

bool level_contains(const Gens& big, const Gens& small, Where where) {
  if (small.empty()) return true;
  if (where.in_r()) return r_ideal_contains(big, small, *where.emb);
  const Ring& ring = ring_of(small);
  return ideal_contains(Ideal(ring, big), Ideal(ring, small));
}

bool level_equal(const Gens& a, const Gens& b, Where where) {
  return level_contains(a, b, where) && level_contains(b, a, where);
}

TestIdealResult test_ideal(const Gens& I, Fraction lambda, unsigned e_max, Where where) {
  if (lambda.num <= 0) throw DomainError("λ must be positive");
  if (e_max == 0) throw DomainError("e must be at least 1");
  TestIdealResult r;
  r.I = I;
  r.lambda = lambda;
  const std::uint32_t p = ring_of(I)->p();
  for (unsigned e = 1; e <= e_max; ++e) {
    const auto q = static_cast<std::int64_t>(prime_power(p, e));
    r.chain.push_back(level_ideal(I, static_cast<std::uint64_t>(lambda.ceil_times(q)), e, where, &r.maps_stable));
    if (e == 1) continue;
    const Gens& prev = r.chain[e - 2];
    const Gens& cur = r.chain[e - 1];
    if (!level_contains(cur, prev, where)) r.ascending = false;
    if (!r.stabilized && level_contains(prev, cur, where) && level_contains(cur, prev, where)) {
      r.stabilized = true;
      r.e_star = e - 1;
      r.tau = prev;
    }
  }
  if (!r.stabilized) r.tau = r.chain.back();
  return r;
}

std::vector<Fraction> JumpSpectrum::lambdas() const {
  std::vector<Fraction> out;
  for (const auto& c : candidates) out.push_back(c.lambda);
  return out;
}

JumpSpectrum jump_spectrum(const Gens& I, unsigned e, Fraction range, Where where, bool refine) {
  if (range.num <= 0) throw DomainError("range bound must be positive");
  const Ring& ring = ring_of(I);
  JumpSpectrum s;
  s.where = where.tag();
  s.I = I;
  s.e = e;
  s.q = prime_power(ring->p(), e);
  s.range = range;
  const auto q = static_cast<std::int64_t>(s.q);
  const std::int64_t a_max = static_cast<std::int64_t>(static_cast<__int128>(range.num) * q / range.den);
  if (a_max > 100'000) throw ResourceBound("jump range too large");
  Gens before = level_ideal(I, 0, e, where, &s.maps_stable);
  for (std::int64_t a = 1; a <= a_max; ++a) {
    Gens after = level_ideal(I, static_cast<std::uint64_t>(a), e, where, &s.maps_stable);
    if (!level_contains(after, before, where))
      s.candidates.push_back({Fraction(a, q), static_cast<std::uint64_t>(a), before, after});
    before = std::move(after);
  }
  if (refine) {
    auto next = jump_spectrum(I, e + 1, range, where, false);
    s.next_level = next.lambdas();
    const auto p = static_cast<std::int64_t>(ring->p());
    for (const auto& c : s.candidates) {
      const auto a = static_cast<std::int64_t>(c.a);
      bool hit = std::any_of(next.candidates.begin(), next.candidates.end(), [&](const JumpCandidate& d) {
        const auto b = static_cast<std::int64_t>(d.a);
        return (a - 1) * p < b && b <= a * p;
      });
      if (!hit) s.refinement_consistent = false;
    }
  }
  return s;
}

SummandReport summand_filter(const Gens& I, const SplitEmbedding& emb, unsigned e, const JumpSpectrum& s_spectrum) {
  if (s_spectrum.where != "S" || s_spectrum.e != e) throw DomainError("summand filter needs an S-spectrum at the same level");
  Where R = Where::R(emb);
  SummandReport rep;
  Gens prev = level_ideal(I, 0, e, R);
  for (const auto& c : s_spectrum.candidates) {
    Gens cur = level_ideal(I, c.a, e, R);
    bool survives = !level_contains(cur, prev, R);
    rep.verdicts.push_back({c.lambda, survives});
    if (survives) rep.survivors.push_back(c.lambda);
    prev = std::move(cur);
  }
  return rep;
}

CyclicWitness cyclic_witness(const Polynomial& f, unsigned e, unsigned e_max, Where where) {
  if (f.is_zero()) throw DomainError("f must be nonzero");
  if (e == 0) throw DomainError("e must be at least 1");
  require_ring({f}, f.ring(), where);
  const Ring& ring = f.ring();
  const std::uint64_t q = prime_power(ring->p(), e);
  for (unsigned ep = e; ep <= e_max; ++ep) {
    FrobeniusContext ctx(ring, ep);
    Ideal b = eth_root(Ideal(pow(f, ctx.q() - 1)), ctx);
    // g ∈ b^[q'] iff C^{e'}(g) ⊆ b.
    if (b.is_unit() || ideal_contains(b, eth_root(Ideal(pow(f, ctx.q() - q)), ctx))) return {ep, true};
  }
  return {0, false};
}

}  // namespace fsing
