#include <algorithm>
#include <random>

#include "doctest.h"
#include "fsing/error.hpp"
#include "fsing/ideal.hpp"

using namespace fsing;

namespace {

// Test-only division algorithm and S-polynomial check, written against the
// public Polynomial API only.
Polynomial lead_term(const Polynomial& f, const MonomialOrder& o) {
  const Monomial& m = leading_monomial(f, o);
  return Polynomial::monomial(f.ring(), m, f.coeff_of(m));
}

Polynomial naive_remainder(Polynomial f, const std::vector<Polynomial>& G, const MonomialOrder& o) {
  const Ring& r = f.ring();
  const std::uint32_t p = r->p();
  Polynomial rem(r);
  while (!f.is_zero()) {
    Polynomial lt = lead_term(f, o);
    const Monomial& m = lt.terms()[0].mono;
    bool reduced = false;
    for (const auto& g : G) {
      const Monomial& gm = leading_monomial(g, o);
      if (!gm.divides(m)) continue;
      std::uint32_t c = lt.terms()[0].coeff;
      std::uint32_t gc = g.coeff_of(gm);
      std::uint32_t factor = static_cast<std::uint32_t>(std::uint64_t{c} * [&] {
        std::uint64_t inv = 1, b = gc, e = p - 2;
        while (e) {
          if (e & 1) inv = inv * b % p;
          b = b * b % p;
          e >>= 1;
        }
        return inv;
      }() % p);
      f = f - g.times_monomial(m / gm, factor);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem = rem + lt;
      f = f - lt;
    }
  }
  return rem;
}

bool is_groebner(const std::vector<Polynomial>& G, const MonomialOrder& o) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      const Monomial& a = leading_monomial(G[i], o);
      const Monomial& b = leading_monomial(G[j], o);
      Monomial l = a.lcm(b);
      const std::uint32_t p = G[i].ring()->p();
      Polynomial s = G[i].times_monomial(l / a, G[j].coeff_of(b)) -
                     G[j].times_monomial(l / b, G[i].coeff_of(a));
      (void)p;
      if (!naive_remainder(s, G, o).is_zero()) return false;
    }
  return true;
}

Polynomial random_poly(const Ring& r, std::mt19937_64& rng, int terms, int max_exp) {
  std::vector<Polynomial::Term> t;
  for (int i = 0; i < terms; ++i) {
    Monomial m(r->n());
    for (std::size_t v = 0; v < r->n(); ++v) m[v] = std::uniform_int_distribution<std::uint32_t>(0, max_exp)(rng);
    t.push_back({m, std::uniform_int_distribution<std::uint32_t>(1, r->p() - 1)(rng)});
  }
  return Polynomial::from_terms(r, t);
}

}  // namespace

TEST_CASE("groebner_basis examples") {
  auto r = make_ring(7, {"x", "y"});
  auto P = [&](const char* s) { return parse_poly(s, r); };
  auto lex = MonomialOrder::lex();

  auto G = groebner_basis(Ideal(r, {P("x+y"), P("y")}), lex);
  REQUIRE(G.size() == 2);
  CHECK(G[0] == P("y"));
  CHECK(G[1] == P("x"));

  Ideal I(r, {P("x*y-1"), P("y^2-1")});
  G = groebner_basis(I, lex);
  std::vector<Polynomial> expected{P("y^2-1"), P("x-y")};
  CHECK(G == expected);
  // Oracle: both sets reduce each other to zero and the expected set is a basis.
  CHECK(is_groebner(expected, lex));
  for (const auto& g : I.gens()) CHECK(naive_remainder(g, expected, lex).is_zero());
  for (const auto& g : expected) CHECK(naive_remainder(g, G, lex).is_zero());
  CHECK(naive_remainder(P("x*y-1"), expected, lex).is_zero());

  CHECK(groebner_basis(Ideal::zero(r), lex).empty());
  CHECK(Ideal(r, {P("0"), P("0")}).gens().empty());
}

TEST_CASE("membership and equality examples") {
  auto r = make_ring(5, {"x", "y"});
  auto P = [&](const char* s) { return parse_poly(s, r); };
  CHECK(ideal_member(P("x^2+y"), Ideal(r, {P("x"), P("y")})));
  CHECK_FALSE(ideal_member(P("x^2*y"), Ideal(r, {P("x^3"), P("y^2")})));
  CHECK(ideal_equal(Ideal(r, {P("x"), P("y")}), Ideal(r, {P("x+y"), P("y")})));
  CHECK_FALSE(ideal_equal(Ideal(r, {P("x")}), Ideal(r, {P("y")})));
  CHECK(Ideal(r, {P("x+1"), P("x")}).is_unit());
  CHECK(normal_form(P("x^2+y"), Ideal(r, {P("x")})) == P("y"));
  CHECK_THROWS_AS(ideal_member(P("x"), Ideal::unit(make_ring(3, {"x", "y"}))), RingMismatch);
}

TEST_CASE("eliminate examples") {
  auto r = make_ring(5, {"x", "y", "y1", "y2", "y3"});
  auto P = [&](const char* s) { return parse_poly(s, r); };
  Ideal I(r, {P("y1 - x^2"), P("y2 - x*y"), P("y3 - y^2")});
  Ideal T = eliminate(I, {"y1", "y2", "y3"});
  auto rk = T.ring();
  CHECK(rk->vars() == std::vector<std::string>{"y1", "y2", "y3"});
  // Binomial relations among (2,0),(1,1),(0,2) up to degree 2: only y1*y3 = y2^2.
  Ideal expected(rk, {parse_poly("y1*y3 - y2^2", rk)});
  CHECK(ideal_equal(T, expected));

  auto r2 = make_ring(3, {"x", "y"});
  CHECK(eliminate(Ideal(r2, {parse_poly("x-y", r2)}), {"x"}).is_zero());
  Ideal ex = eliminate(Ideal(r2, {parse_poly("x", r2)}), {"x"});
  REQUIRE(ex.gens().size() == 1);
  CHECK(ex.gens()[0].to_string() == "x");
  CHECK_THROWS_AS(eliminate(Ideal::zero(r2), {"z"}), DomainError);
}

TEST_CASE("radical_member examples") {
  auto r1 = make_ring(5, {"x"});
  CHECK(radical_member(parse_poly("x", r1), Ideal(r1, {parse_poly("x^3", r1)})));
  auto r2 = make_ring(5, {"x", "y"});
  CHECK_FALSE(radical_member(parse_poly("y", r2), Ideal(r2, {parse_poly("x", r2)})));
  auto r3 = make_ring(2, {"x", "y"});
  CHECK(radical_member(parse_poly("x+y", r3), Ideal(r3, {parse_poly("x^2+y^2", r3)})));
  auto r4 = make_ring(5, {"x", "t"});
  CHECK(radical_member(parse_poly("t", r4), Ideal(r4, {parse_poly("t^2", r4)})));
}

TEST_CASE("resource caps raise ResourceBound") {
  auto saved = groebner_limits();
  groebner_limits().max_basis = 1;
  auto r = make_ring(7, {"x", "y"});
  CHECK_THROWS_AS(Ideal(r, {parse_poly("x*y-1", r), parse_poly("y^2-1", r)}).basis(MonomialOrder::lex()),
                  ResourceBound);
  groebner_limits() = saved;
}

TEST_CASE("property: normal_form(f + g*h) == normal_form(f)") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 200; ++it) {
    std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[it % 3];
    auto r = make_ring(p, {"x", "y", "z"});
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_poly(r, rng, 3, 3));
    Ideal I(r, gens);
    auto f = random_poly(r, rng, 4, 4);
    if (I.gens().empty()) continue;
    auto g = I.gens()[it % I.gens().size()];
    auto h = random_poly(r, rng, 2, 2);
    CHECK(normal_form(f + g * h, I) == normal_form(f, I));
  }
}

TEST_CASE("property: bases are Gröbner bases and presentation independent") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 60; ++it) {
    std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[it % 3];
    auto r = make_ring(p, {"x", "y", "z"});
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_poly(r, rng, 3, 3));
    Ideal I(r, gens);
    for (auto o : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
      auto G = I.basis(o);
      CHECK(is_groebner(G, o));
      for (const auto& g : I.gens()) CHECK(naive_remainder(g, G, o).is_zero());
    }
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.push_back(gens[0] * gens[1] + gens[2]);
    Ideal J(r, shuffled);
    CHECK(ideal_equal(I, J));
    CHECK(I.basis() == J.basis());
    // Equivalence relation on a small family.
    Ideal K(r, {gens[0]});
    CHECK(ideal_equal(K, K));
    CHECK(ideal_equal(I, J) == ideal_equal(J, I));
  }
}

TEST_CASE("property: eliminate over all variables is the identity") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 30; ++it) {
    auto r = make_ring(3, {"x", "y"});
    Ideal I(r, {random_poly(r, rng, 3, 3), random_poly(r, rng, 3, 3)});
    Ideal E = eliminate(I, {"x", "y"});
    Ideal back(r, E.gens().empty() ? std::vector<Polynomial>{} : [&] {
      std::vector<Polynomial> g;
      for (const auto& e : E.gens()) g.push_back(parse_poly(e.to_string(), r));
      return g;
    }());
    CHECK(ideal_equal(I, back));
  }
}

TEST_CASE("ideal_power and minimalize") {
  auto r = make_ring(3, {"x", "y"});
  Ideal m(r, {parse_poly("x", r), parse_poly("y", r)});
  Ideal m3 = ideal_power(m, 3);
  CHECK(m3.gens().size() == 4);
  CHECK(ideal_power(m, 0).is_unit());
  Ideal f(r, {parse_poly("x+y", r)});
  CHECK(ideal_power(f, 3).gens()[0] == parse_poly("x^3+y^3", r));
}
