#include <random>

#include "doctest.h"
#include "fsing/error.hpp"
#include "fsing/frobenius.hpp"
#include "fsing/summand.hpp"

using namespace fsing;

namespace {

Ring veronese_ring(std::uint32_t p) { return make_ring(p, {"x", "y"}); }
SplitEmbedding veronese(const Ring& r) { return build_embedding({{2, 0}, {1, 1}, {0, 2}}, r, 16); }

Ring example_ring(std::uint32_t p) { return make_ring(p, {"x", "y", "u", "v"}); }
SplitEmbedding example(const Ring& r) { return build_embedding({{1, 0, 1, 0}, {0, 1, 0, 1}}, r, 8); }

// Random element of R: random combination of products of generators.
Polynomial random_r_element(const SplitEmbedding& emb, std::mt19937_64& rng, int terms, int max_mult) {
  const auto& gens = emb.semigroup().generators();
  std::vector<Polynomial::Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m(emb.ring()->n());
    for (const auto& g : gens) {
      auto c = std::uniform_int_distribution<std::uint32_t>(0, max_mult)(rng);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += c * static_cast<std::uint32_t>(g[i]);
    }
    t.push_back({m, std::uniform_int_distribution<std::uint32_t>(1, emb.ring()->p() - 1)(rng)});
  }
  return Polynomial::from_terms(emb.ring(), std::move(t));
}

}  // namespace

TEST_CASE("lattice membership") {
  Lattice L({{2, 0}, {1, 1}, {0, 2}}, 2);
  CHECK(L.rank() == 2);
  CHECK(L.contains(IntVec{3, 1}));
  CHECK(L.contains(IntVec{-1, 1}));
  CHECK_FALSE(L.contains(IntVec{1, 0}));
  Lattice E({{2}}, 1);
  CHECK(E.invariant_factors() == std::vector<std::int64_t>{2});
  CHECK(E.contains(IntVec{-4}));
  CHECK_FALSE(E.contains(IntVec{3}));
  Lattice D({{1, 1, 0, 0}, {0, 0, 1, 1}}, 4);
  CHECK(D.rank() == 2);
  CHECK_FALSE(D.contains(IntVec{1, 0, 0, 1}));
}

TEST_CASE("smith normal form reproduces the matrix") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMat A(rows, IntVec(cols));
    for (auto& row : A)
      for (auto& x : row) x = std::uniform_int_distribution<int>(-4, 4)(rng);
    auto s = smith_normal_form(A, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::int64_t acc = 0;
        for (std::size_t k = 0; k < rows; ++k)
          for (std::size_t l = 0; l < cols; ++l) acc += s.U[i][k] * A[k][l] * s.W[l][j];
        CHECK(acc == s.D[i][j]);
      }
    for (std::size_t k = 1; k < s.diagonal.size(); ++k) CHECK(s.diagonal[k] % s.diagonal[k - 1] == 0);
  }
}

TEST_CASE("purity verification") {
  auto r1 = make_ring(3, {"x"});
  auto e = build_embedding({{2}}, r1, 8);
  CHECK(e.certificate().verified);
  CHECK(e.semigroup().group().invariant_factors() == std::vector<std::int64_t>{2});
  try {
    build_embedding({{2}, {3}}, r1, 12);
    FAIL("cusp accepted");
  } catch (const PurityRejected& err) {
    CHECK(err.witness() == std::vector<std::int64_t>{1});
  }
  auto r = example_ring(5);
  CHECK(example(r).certificate().verified);
  CHECK(build_embedding({{1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}}, r, 8).certificate().verified);
  CHECK_THROWS_AS(build_embedding({{2}, {2}}, r1, 8), DomainError);
  CHECK_THROWS_AS(build_embedding({{0}}, r1, 8), DomainError);
  CHECK_THROWS_AS(build_embedding({{2}}, r1, 3), DomainError);
}

TEST_CASE("beta projection") {
  auto r = veronese_ring(3);
  auto ver = veronese(r);
  CHECK(beta_project(parse_poly("x^2 + x", r), ver) == parse_poly("x^2", r));
  auto z = make_ring(3, {"x", "y", "z", "u"});
  auto seg = build_embedding({{1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}}, z, 8);
  CHECK(beta_project(parse_poly("x*y*z*u", z), seg) == parse_poly("x*y*z*u", z));
  CHECK(beta_project(parse_poly("x*y*u^2", z), seg).is_zero());
  auto s = example_ring(3);
  auto ex = example(s);
  auto f = parse_poly("x*u - y*v", s);
  CHECK(beta_project(f, ex) == f);
  CHECK_THROWS_AS(beta_project(parse_poly("x^20", r), ver), ResourceBound);
}

TEST_CASE("presentations") {
  auto r = veronese_ring(5);
  auto ver = veronese(r);
  const auto& P = presentation(ver);
  REQUIRE(P.toric.gens().size() == 1);
  CHECK(ideal_equal(P.toric, Ideal(parse_poly("y1*y3 - y2^2", P.aux))));
  auto ex = example(example_ring(5));
  CHECK(ex.presentation().toric.is_zero());
  CHECK(ex.presentation().aux->n() == 2);
  auto r1 = make_ring(5, {"x"});
  CHECK(build_embedding({{2}}, r1, 8).presentation().toric.is_zero());
  // aux names avoid the ambient variables
  auto ry = make_ring(5, {"y1", "y2"});
  auto emb = build_embedding({{2, 0}, {1, 1}, {0, 2}}, ry, 16);
  CHECK(emb.presentation().aux->vars()[0] != "y1");
}

TEST_CASE("monomial decompositions") {
  auto ex = example(example_ring(5));
  CHECK(monomial_decompose(Monomial{1, 1, 1, 1}, ex) == Decomposition{1, 1});
  auto ver = veronese(veronese_ring(5));
  CHECK(monomial_decompose(Monomial{2, 2}, ver) == Decomposition{1, 0, 1});
  CHECK(monomial_decompose(Monomial{3, 1}, ver) == Decomposition{1, 1, 0});
  CHECK_THROWS_AS(monomial_decompose(Monomial{1, 0}, ver), DomainError);
  CHECK(all_decompositions(Monomial{2, 2}, ver).size() == 2);
  auto pd = push_down(lift(parse_poly("x^3*y + 2*x*y^5", ver.ring()), ver), ver);
  CHECK(pd == parse_poly("x^3*y + 2*x*y^5", ver.ring()));
}

TEST_CASE("R-ideal membership") {
  auto r = veronese_ring(5);
  auto ver = veronese(r);
  auto P = [&](const char* s) { return parse_poly(s, r); };
  CHECK(r_ideal_member(P("x^2*y^2"), {P("x^2"), P("y^2")}, ver));
  CHECK_FALSE(r_ideal_member(P("x*y"), {P("x^2")}, ver));
  CHECK(r_ideal_member(P("x^3*y"), {P("x^2")}, ver));
  CHECK_FALSE(r_ideal_member(P("x^2"), {P("x*y")}, ver));
  CHECK(r_ideal_member(P("x^2*y^2"), {P("x*y")}, ver));
  CHECK_THROWS_AS(r_ideal_member(P("x"), {P("x^2")}, ver), DomainError);
  auto s = example_ring(7);
  auto ex = example(s);
  auto f = parse_poly("x*u - y*v", s);
  CHECK(r_ideal_member(f, {f}, ex));
  CHECK(r_ideal_equal({f, parse_poly("x*u", s)}, {parse_poly("x*u", s), parse_poly("y*v", s)}, ex));
}

TEST_CASE("property: beta is an idempotent R-linear projection") {
  std::mt19937_64 rng(17);
  auto r = veronese_ring(3);
  auto ver = veronese(r);
  for (int i = 0; i < 100; ++i) {
    std::vector<Polynomial::Term> t;
    for (int k = 0; k < 4; ++k)
      t.push_back({Monomial{std::uint32_t(rng() % 6), std::uint32_t(rng() % 6)}, std::uint32_t(1 + rng() % 2)});
    auto f = Polynomial::from_terms(r, t);
    auto b = beta_project(f, ver);
    CHECK(beta_project(b, ver) == b);
    CHECK(ver.contains(b));
    auto s = random_r_element(ver, rng, 1, 2);
    CHECK(beta_project(s * f, ver) == s * b);
  }
}

TEST_CASE("property: membership independent of decomposition choice") {
  std::mt19937_64 rng(23);
  auto r = veronese_ring(3);
  auto ver = veronese(r);
  for (int i = 0; i < 100; ++i) {
    auto f = random_r_element(ver, rng, 2, 3);
    std::vector<Polynomial> J{random_r_element(ver, rng, 1, 2), random_r_element(ver, rng, 2, 2)};
    bool base = r_ideal_member(f, J, ver);
    std::uint64_t salt = rng();
    Decomposer shuffled = [&](const Monomial& m) {
      auto all = all_decompositions(m, ver);
      return all[(salt + m.hash()) % all.size()];
    };
    CHECK(r_ideal_member(f, J, ver, shuffled) == base);
  }
}

TEST_CASE("property: containment in R agrees with containment in S") {
  // J^t ⊆ a^[q] in R iff the same holds after extension to S.
  std::mt19937_64 rng(29);
  for (std::uint32_t p : {2u, 3u}) {
    auto r = veronese_ring(p);
    auto ver = veronese(r);
    FrobeniusContext c(r, 1);
    std::vector<Polynomial> a{parse_poly("x^2", r), parse_poly("x*y", r), parse_poly("y^2", r)};
    for (int i = 0; i < 20; ++i) {
      auto f = random_r_element(ver, rng, 2, 2);
      if (f.is_zero() || f.is_constant()) continue;
      for (std::uint64_t t = 1; t <= 4; ++t) {
        auto ft = pow(f, t);
        std::vector<Polynomial> aq;
        for (const auto& g : a) aq.push_back(pow(g, c.q()));
        CHECK(r_ideal_member(ft, aq, ver) == ideal_member(ft, Ideal(r, aq)));
      }
    }
  }
}
