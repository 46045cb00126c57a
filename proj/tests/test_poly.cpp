#include <random>

#include "doctest.h"
#include "fsing/error.hpp"
#include "fsing/polynomial.hpp"

using namespace fsing;

namespace {

Ring xyuv(std::uint32_t p) { return make_ring(p, {"x", "y", "u", "v"}); }

Polynomial random_poly(const Ring& r, std::mt19937_64& rng, int max_terms, int max_exp) {
  std::vector<Polynomial::Term> terms;
  int k = std::uniform_int_distribution<int>(0, max_terms)(rng);
  for (int i = 0; i < k; ++i) {
    Monomial m(r->n());
    for (std::size_t v = 0; v < r->n(); ++v)
      m[v] = std::uniform_int_distribution<std::uint32_t>(0, max_exp)(rng);
    terms.push_back({m, std::uniform_int_distribution<std::uint32_t>(0, r->p() - 1)(rng)});
  }
  return Polynomial::from_terms(r, terms);
}

}  // namespace

TEST_CASE("ring descriptor validation") {
  CHECK_THROWS_AS(make_ring(4, {"x"}), DomainError);
  CHECK_THROWS_AS(make_ring(5, {"x", "x"}), DomainError);
  CHECK_THROWS_AS(make_ring(5, {"1x"}), DomainError);
  CHECK(make_ring(2, {"x_1", "Y2"})->n() == 2);
}

TEST_CASE("parse_poly examples") {
  auto r = xyuv(5);
  auto f = parse_poly("x*u - y*v", r);
  REQUIRE(f.size() == 2);
  Monomial xu{1, 0, 1, 0}, yv{0, 1, 0, 1};
  CHECK(f.coeff_of(xu) == 1);
  CHECK(f.coeff_of(yv) == 4);
  CHECK(parse_poly("x*y - y*x", r).is_zero());
  auto r2 = make_ring(2, {"x", "y"});
  CHECK(parse_poly("(x+y)^2", r2) == parse_poly("x^2 + y^2", r2));
  CHECK(parse_poly("12", r).to_string() == "2");
  CHECK(parse_poly("x/2", r) == parse_poly("3*x", r));
}

TEST_CASE("parse_poly errors carry offsets") {
  auto r = xyuv(5);
  try {
    parse_poly("x + z", r);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  try {
    parse_poly("x + * y", r);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_poly("x^4294967296", r), ParseError);
  CHECK_THROWS_AS(parse_poly("(x", r), ParseError);
  CHECK_THROWS_AS(parse_poly("", r), ParseError);
  CHECK_THROWS_AS(parse_poly("x/5", r), Error);
}

TEST_CASE("arithmetic examples") {
  auto r = make_ring(3, {"x", "y"});
  auto x = Polynomial::variable(r, 0), y = Polynomial::variable(r, 1);
  CHECK((x + (-x)).is_zero());
  CHECK(((x + Polynomial::constant(r, 1)) * (x - Polynomial::constant(r, 1))) == parse_poly("x^2 + 2", r));
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto rp = make_ring(p, {"x", "y"});
    auto s = Polynomial::variable(rp, 0) + Polynomial::variable(rp, 1);
    CHECK(pow(s, p) == parse_poly("x^" + std::to_string(p) + " + y^" + std::to_string(p), rp));
  }
  CHECK_THROWS_AS(x + Polynomial::variable(xyuv(3), 0), RingMismatch);
  CHECK(pow(x + y, 0) == Polynomial::constant(r, 1));
}

TEST_CASE("canonical printing") {
  auto r = xyuv(5);
  CHECK(parse_poly("x*u - y*v", r).to_string() == "x*u + 4*y*v");
  CHECK(parse_poly("3 + x^2*y - x", r).to_string() == "x^2*y + 4*x + 3");
  CHECK(Polynomial(r).to_string() == "0");
}

TEST_CASE("pe_decompose examples") {
  auto r1 = make_ring(2, {"x"});
  auto d = pe_decompose(parse_poly("x^3", r1), 1);
  REQUIRE(d.size() == 1);
  CHECK(d[0].first == Monomial{1});
  CHECK(d[0].second == parse_poly("x", r1));

  auto r2 = make_ring(2, {"x", "y"});
  d = pe_decompose(parse_poly("x^2+y^2", r2), 1);
  REQUIRE(d.size() == 1);
  CHECK(d[0].first == Monomial{0, 0});
  CHECK(d[0].second == parse_poly("x+y", r2));

  d = pe_decompose(parse_poly("x*u - y*v", xyuv(2)), 1);
  REQUIRE(d.size() == 2);
  CHECK(d[0].second.is_constant());
  CHECK(d[1].second.is_constant());
  CHECK_THROWS_AS(pe_decompose(parse_poly("x", r1), 0), DomainError);
}

TEST_CASE("property: pe_decompose reassembles f") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (unsigned e = 1; e <= 2; ++e) {
      for (int it = 0; it < 60; ++it) {
        auto f = random_poly(r, rng, 6, 12);
        Polynomial sum(r);
        for (const auto& [a, g] : pe_decompose(f, e))
          sum = sum + pow(g, prime_power(p, e)) * Polynomial::monomial(r, a);
        CHECK(sum == f);
      }
    }
  }
}

TEST_CASE("property: Frobenius scales exponents") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = make_ring(p, {"x", "y"});
    for (int it = 0; it < 40; ++it) {
      auto f = random_poly(r, rng, 5, 6);
      auto g = pow(f, p);
      REQUIRE(g.size() == f.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(g.terms()[i].mono == f.terms()[i].mono.scaled(p));
        CHECK(g.terms()[i].coeff == f.terms()[i].coeff);
      }
    }
  }
}

TEST_CASE("property: parse(print(f)) == f") {
  std::mt19937_64 rng(3);
  auto r = make_ring(7, {"x", "y", "z_2"});
  for (int it = 0; it < 1000; ++it) {
    auto f = random_poly(r, rng, 8, 9);
    CHECK(parse_poly(f.to_string(), r) == f);
  }
}

TEST_CASE("monomial orders") {
  Monomial a{2, 0, 0}, b{0, 1, 1}, c{1, 1, 0};
  auto lex = MonomialOrder::lex(), grl = MonomialOrder::grevlex();
  CHECK(lex.greater(a, c));
  CHECK(lex.greater(c, b));
  CHECK(grl.greater(c, b));  // same degree, smaller last exponent wins
  CHECK(grl.greater(a, c));
  auto blk = MonomialOrder::block_lex_grevlex(1);
  CHECK(blk.greater(Monomial{1, 0, 0}, Monomial{0, 5, 5}));
  CHECK(blk.greater(Monomial{0, 2, 0}, Monomial{0, 0, 1}));
  CHECK_THROWS_AS(Monomial{2147483648u} * Monomial{1}, OverflowError);
}
