#include <random>

#include "doctest.h"
#include "fsing/error.hpp"
#include "fsing/frobenius.hpp"

using namespace fsing;

namespace {

Polynomial random_poly(const Ring& r, std::mt19937_64& rng, int terms, int max_exp) {
  std::vector<Polynomial::Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m(r->n());
    for (std::size_t v = 0; v < r->n(); ++v) m[v] = std::uniform_int_distribution<std::uint32_t>(0, max_exp)(rng);
    t.push_back({m, std::uniform_int_distribution<std::uint32_t>(1, r->p() - 1)(rng)});
  }
  return Polynomial::from_terms(r, std::move(t));
}

Ideal random_ideal(const Ring& r, std::mt19937_64& rng, int max_gens = 2) {
  std::vector<Polynomial> g;
  int k = std::uniform_int_distribution<int>(1, max_gens)(rng);
  for (int i = 0; i < k; ++i) g.push_back(random_poly(r, rng, std::uniform_int_distribution<int>(1, 3)(rng), 3));
  return Ideal(r, g);
}

Ideal ideal_of(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_poly(s, r));
  return Ideal(r, g);
}

}  // namespace

TEST_CASE("bracket powers") {
  auto r = make_ring(2, {"x", "y"});
  FrobeniusContext c2(r, 2);
  CHECK(c2.q() == 4);
  CHECK(ideal_equal(bracket_power(ideal_of(r, {"x", "y"}), c2), ideal_of(r, {"x^4", "y^4"})));
  CHECK(bracket_power(Ideal::zero(r), c2).is_zero());
  auto r3 = make_ring(3, {"x", "y"});
  auto b = bracket_power(ideal_of(r3, {"x+y"}), FrobeniusContext(r3, 1));
  REQUIRE(b.gens().size() == 1);
  CHECK(b.gens()[0] == parse_poly("x^3+y^3", r3));
  CHECK_THROWS_AS(FrobeniusContext(r, 0), DomainError);
}

TEST_CASE("eth roots") {
  auto r = make_ring(2, {"x", "y"});
  FrobeniusContext c(r, 1);
  CHECK(ideal_equal(eth_root(ideal_of(r, {"x^2"}), c), ideal_of(r, {"x"})));
  CHECK(eth_root(ideal_of(r, {"x*y"}), c).is_unit());
  CHECK(ideal_equal(eth_root(ideal_of(r, {"x^3 + x*y^2"}), c), ideal_of(r, {"x+y"})));
  CHECK(eth_root(Ideal::unit(r), c).is_unit());
  CHECK(eth_root(Ideal::zero(r), c).is_zero());
}

TEST_CASE("d images") {
  auto r = make_ring(2, {"x", "y"});
  FrobeniusContext c(r, 1);
  CHECK(ideal_equal(d_image(ideal_of(r, {"x^3"}), c), ideal_of(r, {"x^2"})));
  CHECK(d_image(ideal_of(r, {"x*y"}), c).is_unit());
  CHECK(ideal_equal(d_image(ideal_of(r, {"x^2+y^2"}), c), ideal_of(r, {"x^2+y^2"})));
}

TEST_CASE("property: root of bracket power is the identity") {
  std::mt19937_64 rng(101);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned e : {1u, 2u}) {
      auto r = make_ring(p, {"x", "y", "z"});
      FrobeniusContext c(r, e);
      for (int i = 0; i < 34; ++i) {
        Ideal I = random_ideal(r, rng);
        CHECK_MESSAGE(ideal_equal(eth_root(bracket_power(I, c), c), I), I.to_string());
      }
    }
}

TEST_CASE("property: monotone, linear over q-th powers, composes across levels") {
  std::mt19937_64 rng(202);
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y"});
    FrobeniusContext c1(r, 1), c2(r, 2);
    for (int i = 0; i < 25; ++i) {
      Ideal I = random_ideal(r, rng);
      Ideal J = ideal_sum(I, random_ideal(r, rng));
      CHECK(ideal_contains(eth_root(J, c1), eth_root(I, c1)));

      Polynomial h = random_poly(r, rng, 2, 2);
      if (h.is_zero()) continue;
      Ideal H(h);
      Ideal twisted = ideal_product(I, bracket_power(H, c1));
      CHECK(ideal_equal(eth_root(twisted, c1), ideal_product(H, eth_root(I, c1))));

      CHECK(ideal_equal(eth_root(eth_root(I, c1), c1), eth_root(I, c2)));

      Ideal D = d_image(I, c1);
      CHECK(ideal_contains(D, I));
      CHECK(ideal_equal(d_image(D, c1), D));
    }
  }
}
