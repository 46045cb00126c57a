#include "fsing/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "fsing/bpoly.hpp"
#include "fsing/cartier.hpp"
#include "fsing/error.hpp"
#include "fsing/frobenius.hpp"
#include "fsing/invariants.hpp"
#include "fsing/oracle.hpp"

namespace fsing {

namespace {

using Rng = std::mt19937_64;

std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

Polynomial random_poly(const Ring& r, Rng& rng, std::uint32_t max_deg, int max_terms, bool allow_constant) {
  std::vector<Polynomial::Term> t;
  int terms = static_cast<int>(uniform(rng, 1, static_cast<std::uint32_t>(max_terms)));
  for (int k = 0; k < terms; ++k) {
    Monomial m(r->n());
    for (;;) {
      std::uint32_t budget = uniform(rng, allow_constant ? 0 : 1, max_deg), total = 0;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0;
      for (std::uint32_t d = 0; d < budget; ++d) ++m[uniform(rng, 0, static_cast<std::uint32_t>(r->n() - 1))];
      for (std::size_t i = 0; i < m.size(); ++i) total += m[i];
      if (total || allow_constant) break;
    }
    t.push_back({m, uniform(rng, 1, r->p() - 1)});
  }
  return Polynomial::from_terms(r, std::move(t));
}

Ring random_ring(std::uint32_t p, Rng& rng) {
  static const std::vector<std::string> names{"x", "y", "z"};
  auto n = uniform(rng, 1, 3);
  return make_ring(p, {names.begin(), names.begin() + n});
}

Gens maximal(const Ring& r) {
  Gens g;
  for (std::size_t i = 0; i < r->n(); ++i) g.push_back(Polynomial::variable(r, i));
  return g;
}

Gens r_maximal(const SplitEmbedding& emb) {
  Gens g;
  for (std::size_t i = 0; i < emb.semigroup().generators().size(); ++i) g.push_back(emb.generator(i));
  return g;
}

Polynomial r_monomial(const SplitEmbedding& emb, Rng& rng, std::uint32_t max_mult, bool allow_one) {
  const auto& gens = emb.semigroup().generators();
  for (;;) {
    Monomial m(emb.ring()->n());
    std::uint32_t total = 0;
    for (const auto& g : gens) {
      auto c = uniform(rng, 0, max_mult);
      total += c;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += c * static_cast<std::uint32_t>(g[i]);
    }
    if (total || allow_one) return Polynomial::monomial(emb.ring(), m);
  }
}

Gens random_monomial_ideal(const SplitEmbedding& emb, Rng& rng) {
  Gens g;
  auto k = uniform(rng, 1, 3);
  for (std::uint32_t i = 0; i < k; ++i) g.push_back(r_monomial(emb, rng, 2, false));
  return g;
}

Polynomial random_r_element(const SplitEmbedding& emb, Rng& rng, int max_terms, std::uint32_t max_mult) {
  Polynomial f = Polynomial::constant(emb.ring(), 0);
  while (f.is_zero()) {
    auto terms = uniform(rng, 1, static_cast<std::uint32_t>(max_terms));
    for (std::uint32_t k = 0; k < terms; ++k)
      f = f + r_monomial(emb, rng, max_mult, false) * Polynomial::constant(emb.ring(), uniform(rng, 1, emb.ring()->p() - 1));
  }
  return f;
}

Gens power(const Gens& I, std::uint64_t k) { return ideal_power(Ideal(I.front().ring(), I), k).gens(); }

bool subset(const std::vector<Fraction>& a, const std::vector<Fraction>& b) {
  return std::all_of(a.begin(), a.end(), [&](const Fraction& x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

SplitEmbedding veronese(const Ring& r) { return build_embedding({{2, 0}, {1, 1}, {0, 2}}, r, 16); }
SplitEmbedding example(const Ring& r) { return build_embedding({{1, 0, 1, 0}, {0, 1, 0, 1}}, r, 8); }

// Failures collected while a criterion runs.
struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  std::string summary(const std::string& extra = "") const {
    std::ostringstream os;
    os << checks << " checks, " << failures << " failures";
    if (!extra.empty()) os << ", " << extra;
    if (failures) os << "; first: " << first;
    return os.str();
  }
};

CriterionResult frobenius_soundness(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  std::size_t nu_cases = 0;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned e : {1u, 2u})
      for (int it = 0; it < 100; ++it) {
        auto r = random_ring(p, rng);
        FrobeniusContext ctx(r, e);
        Gens g;
        for (std::uint32_t k = uniform(rng, 1, 2); k > 0; --k) g.push_back(random_poly(r, rng, 6, 3, true));
        Ideal I(r, g);
        auto tag = [&](const std::string& what) {
          return what + " p=" + std::to_string(p) + " e=" + std::to_string(e) + " I=" + I.to_string();
        };
        t.check(ideal_equal(eth_root(bracket_power(I, ctx), ctx), I), tag("root of bracket power"));
        t.check(ideal_equal(eth_root(I, ctx), oracle::eth_root_dense(I, e)), tag("dense root"));

        // ν of a principal ideal against a random monomial ideal; degrees
        // shrink until the dense expansion fits.
        for (std::uint32_t deg = 6; deg >= 1; --deg) {
          auto f = random_poly(r, rng, deg, 3, false);
          Gens a;
          for (std::size_t i = 0; i < r->n(); ++i) {
            Monomial m(r->n());
            m[i] = uniform(rng, 1, 2);
            a.push_back(Polynomial::monomial(r, m));
          }
          try {
            auto dense = oracle::nu_dense(f, a, e);
            auto main = nu({f}, a, e, Where::S());
            t.check(dense == main.value && main.bounds_checked, tag("nu of " + f.to_string()));
            ++nu_cases;
            break;
          } catch (const ResourceBound&) {
          }
        }
      }
  CriterionResult c;
  c.detail = t.summary(std::to_string(nu_cases) + " nu cases");
  c.passed = t.failures == 0 && nu_cases >= 600;
  return c;
}

CriterionResult golden_example(std::uint64_t) {
  Tally t;
  const auto& cat = builtin_catalog();
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    std::string at = " at p=" + std::to_string(p);
    auto r = make_ring(p, {"x", "y", "u", "v"});
    auto ex = example(r);
    auto f = parse_poly("x*u - y*v", r);
    t.check(ex.presentation().toric.gens().empty(), "toric ideal nonzero" + at);

    // R-level spectrum against levels computed by the dense root after transport.
    auto js = jump_spectrum({f}, 2, Fraction(1), Where::R(ex));
    oracle::TransportIso T(ex);
    auto g = T.forward(f);
    const std::uint64_t q = prime_power(p, 2);
    std::vector<Fraction> expect;
    Ideal prev = Ideal::unit(T.target());
    for (std::uint64_t a = 1; a <= q; ++a) {
      Ideal level = oracle::eth_root_dense(Ideal(pow(g, a)), 2);
      if (!ideal_contains(level, prev)) expect.push_back(Fraction(static_cast<std::int64_t>(a), static_cast<std::int64_t>(q)));
      prev = level;
    }
    t.check(js.lambdas() == std::vector<Fraction>{Fraction(1)}, "R spectrum" + at);
    t.check(js.lambdas() == expect, "transport spectrum" + at);

    auto rr = bs_threshold_check(cat.at("xu-yv:R"), f, r_maximal(ex), 1, 3, Where::R(ex));
    t.check(rr.entries.size() == 3 && rr.all_pass(), "b = s+1 over R" + at);
    if (p != 2) {
      auto sr = bs_threshold_check(cat.at("xu-yv:S"), f, maximal(r), 1, 2, Where::S());
      t.check(sr.entries.size() == 2 && sr.all_pass(), "b = (s+1)(s+2) over S" + at);
    }
  }
  t.check(divides(BPolynomial::parse("s+1"), BPolynomial::parse("(s+1)*(s+2)")), "divisibility");
  t.check(remainder(cat.at("xu-yv:S"), cat.at("xu-yv:R")).empty(), "catalog divisibility");
  CriterionResult c;
  c.detail = t.summary();
  c.passed = t.failures == 0;
  return c;
}

CriterionResult containment(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y"});
    auto ver = veronese(r);
    std::vector<Gens> cases{{parse_poly("x^2+y^2", r)}};
    for (int k = 0; k < 5; ++k) cases.push_back(random_monomial_ideal(ver, rng));
    for (const auto& I : cases)
      for (unsigned e : {1u, 2u}) {
        Fraction range = I.size() == 1 && I[0].terms().size() > 1 ? Fraction(1) : Fraction(2);
        auto s = jump_spectrum(I, e, range, Where::S());
        auto rs = jump_spectrum(I, e, range, Where::R(ver));
        std::string tag = "p=" + std::to_string(p) + " e=" + std::to_string(e) + " I=" + Ideal(r, I).to_string();
        t.check(subset(rs.lambdas(), s.lambdas()), "R candidates outside S candidates for " + tag);
        t.check(rs.maps_stable, "maps unstable for " + tag);
      }
  }
  CriterionResult c;
  c.detail = t.summary();
  c.passed = t.failures == 0;
  return c;
}

CriterionResult transfer(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  std::size_t premises = 0;
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y"});
    auto ver = veronese(r);
    FrobeniusContext ctx(r, 1);
    for (int it = 0; it < 50; ++it) {
      auto I = random_monomial_ideal(ver, rng);
      std::vector<Ideal> roots;
      std::vector<Gens> images;
      for (unsigned k = 1; k <= 4; ++k) {
        auto Ik = power(I, k);
        roots.push_back(eth_root(Ideal(r, Ik), ctx));
        images.push_back(cartier_image(Ik, ver, 1).image);
      }
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
          if (ideal_equal(roots[a], roots[b])) {
            ++premises;
            t.check(r_ideal_equal(images[a], images[b], ver),
                    "p=" + std::to_string(p) + " I=" + Ideal(r, I).to_string() + " r=" + std::to_string(a + 1) +
                        " t=" + std::to_string(b + 1));
          }
    }
  }
  CriterionResult c;
  c.detail = t.summary(std::to_string(premises) + " equal S-roots");
  c.passed = t.failures == 0;
  return c;
}

CriterionResult nu_laws(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  auto laws = [&](const Gens& J, const Gens& a, Where where, unsigned e_top, const std::string& tag) {
    std::uint64_t prev = 0;
    for (unsigned e = 1; e <= e_top; ++e) {
      auto res = nu(J, a, e, where);
      std::string at = tag + " e=" + std::to_string(e);
      t.check(res.bounds_checked, "post check " + at);
      t.check(power_contained(J, res.value + 1, a, e, Where::S()), "upper bound " + at);
      t.check(!power_contained(J, res.value, a, e, Where::S()), "lower bound " + at);
      if (e > 1) t.check(res.value >= J.front().ring()->p() * prev, "scaling " + at);
      if (where.in_r()) {
        NuOptions opt;
        opt.r_presentation = true;
        auto viaR = nu(J, a, e, where, opt);
        auto inS = nu(J, a, e, Where::S());
        t.check(viaR.value == inS.value && res.value == inS.value, "R versus S " + at);
      }
      prev = res.value;
    }
  };

  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto r = make_ring(p, {"x", "y", "u", "v"});
    auto ex = example(r);
    Gens f{parse_poly("x*u - y*v", r)};
    laws(f, r_maximal(ex), Where::R(ex), p <= 3 ? 3 : 2, "xu-yv over R p=" + std::to_string(p));
    laws(f, maximal(r), Where::S(), 2, "xu-yv over S p=" + std::to_string(p));
  }
  {
    auto r7 = make_ring(7, {"x", "y"});
    laws({parse_poly("x^2+y^3", r7)}, maximal(r7), Where::S(), 2, "x^2+y^3");
    auto r2 = make_ring(2, {"x", "y"});
    laws({parse_poly("x*y", r2)}, maximal(r2), Where::S(), 3, "xy");
    auto r3 = make_ring(3, {"x"});
    laws({parse_poly("x", r3)}, maximal(r3), Where::S(), 3, "x");
  }

  for (int it = 0; it < 50; ++it) {
    std::uint32_t p = it % 2 ? 3 : 2;
    auto r2 = make_ring(p, {"x", "y"});
    auto r4 = make_ring(p, {"x", "y", "u", "v"});
    bool use_veronese = it % 4 < 2;
    auto emb = use_veronese ? veronese(r2) : example(r4);
    Gens J{random_r_element(emb, rng, 3, 2)};
    laws(J, r_maximal(emb), Where::R(emb), 2, "random " + J[0].to_string() + " p=" + std::to_string(p));
  }
  CriterionResult c;
  c.detail = t.summary();
  c.passed = t.failures == 0;
  return c;
}

CriterionResult tau_monotone(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  std::size_t unstabilized = 0;
  for (int it = 0; it < 20; ++it) {
    std::uint32_t p = it % 2 ? 3 : 2;
    auto r = make_ring(p, {"x", "y"});
    auto f = random_poly(r, rng, 3, 3, false);
    auto g = random_poly(r, rng, 2, 2, false);
    Gens I{f * g}, J{f};
    const std::int64_t q = static_cast<std::int64_t>(p) * p;
    Gens prev_I;
    for (std::int64_t a = 1; a <= q; ++a) {
      Fraction lam(a, q);
      auto tI = test_ideal(I, lam, 3, Where::S());
      auto tJ = test_ideal(J, lam, 3, Where::S());
      if (!tI.stabilized) ++unstabilized;
      if (!tJ.stabilized) ++unstabilized;
      std::string tag = "f=" + f.to_string() + " g=" + g.to_string() + " lambda=" + lam.to_string();
      t.check(level_contains(tJ.tau, tI.tau, Where::S()), "ideal inclusion " + tag);
      if (!prev_I.empty()) t.check(level_contains(prev_I, tI.tau, Where::S()), "lambda order " + tag);
      prev_I = tI.tau;
    }
  }
  CriterionResult c;
  c.detail = t.summary(std::to_string(unstabilized) + " chains without stabilization by e=3");
  c.passed = t.failures == 0;
  return c;
}

CriterionResult cyclicity(std::uint64_t) {
  Tally t;
  for (std::uint32_t p : {2u, 5u}) {
    auto r2 = make_ring(p, {"x", "y"});
    auto r4 = make_ring(p, {"x", "y", "u", "v"});
    auto ex = example(r4);
    struct Case {
      Polynomial f;
      Where where;
    };
    std::vector<Case> cases{{parse_poly("x", r2), Where::S()},
                            {parse_poly("x^2+y^3", r2), Where::S()},
                            {parse_poly("x*u - y*v", r4), Where::R(ex)}};
    for (const auto& k : cases) {
      auto w = cyclic_witness(k.f, 1, 3, k.where);
      t.check(w.verified && w.e_prime <= 3, k.f.to_string() + " at p=" + std::to_string(p));
    }
  }
  CriterionResult c;
  c.detail = t.summary();
  c.passed = t.failures == 0;
  return c;
}

CriterionResult solver_cross_check(std::uint64_t) {
  Tally t;
  std::size_t pieces = 0, shifts = 0;
  for (std::uint32_t p : {2u, 3u}) {
    const auto P = static_cast<std::int64_t>(p);
    auto r1 = make_ring(p, {"x"});
    auto r2 = make_ring(p, {"x", "y"});
    auto r4 = make_ring(p, {"x", "y", "u", "v"});
    struct Case {
      std::string name;
      SplitEmbedding emb;
      std::int64_t box, lo, hi;
    };
    std::vector<Case> cases{{"S", full_embedding(r2, 8), 4 * P, -2 * P, P},
                            {"F_p[x^2]", build_embedding({{2}}, r1, 8), 8 * P, -4 * P, 2 * P},
                            {"Veronese", veronese(r2), 8 * P, -3 * P, 2 * P},
                            {"F_p[xu,yv]", example(r4), 4 * P, -P - 1, 1}};
    for (const auto& k : cases) {
      std::string tag = k.name + " p=" + std::to_string(p);
      auto cmp = oracle::compare_pieces(k.emb, 1, k.box, k.lo, k.hi);
      pieces += cmp.pieces;
      shifts += cmp.shifts;
      t.check(cmp.mismatches == 0, tag + (cmp.notes.empty() ? "" : ": " + cmp.notes.front()));
      auto maps = enumerate_maps(k.emb, 1);
      t.check(maps->stable, "window doubling changed the maps for " + tag);
      for (const auto& m : maps->maps)
        t.check(oracle::cartier_piece_solver(k.emb, 1, m.w, k.box).dimension == 1, "enumerated map missing in solver, " + tag);
    }
  }
  CriterionResult c;
  c.detail = t.summary(std::to_string(shifts) + " degrees, " + std::to_string(pieces) + " nonzero pieces");
  c.passed = t.failures == 0;
  return c;
}

struct Criterion {
  const char* name;
  double limit;
  CriterionResult (*fn)(std::uint64_t);
};

const Criterion kCriteriaTable[kCriteria] = {
    {"Frobenius kernel soundness and oracle agreement", 120, frobenius_soundness},
    {"golden suite for xu - yv", 180, golden_example},
    {"R jump candidates within S jump candidates", 300, containment},
    {"transfer of equal S-roots to equal R-images", 300, transfer},
    {"nu laws", 180, nu_laws},
    {"monotonicity of test ideals", 180, tau_monotone},
    {"cyclicity witness", 120, cyclicity},
    {"Cartier maps against the constraint solver", 300, solver_cross_check},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriteria) throw DomainError("no criterion " + std::to_string(id));
  const Criterion& s = kCriteriaTable[id - 1];
  auto start = std::chrono::steady_clock::now();
  CriterionResult c;
  try {
    c = s.fn(seed + static_cast<std::uint64_t>(id));
  } catch (const Error& e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.id = id;
  c.name = s.name;
  c.limit = s.limit;
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.passed && c.seconds > c.limit) {
    c.passed = false;
    c.detail += "; over the time limit";
  }
  return c;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& done) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run_criterion(id, seed));
    if (done) done(out.back());
  }
  return out;
}

}  // namespace fsing
