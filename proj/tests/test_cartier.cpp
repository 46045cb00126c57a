#include <random>
#include <set>

#include "doctest.h"
#include "fsing/cartier.hpp"
#include "fsing/error.hpp"
#include "fsing/frobenius.hpp"
#include "fsing/oracle.hpp"

using namespace fsing;

namespace {

std::vector<Polynomial> gens_of(const Ring& r, std::initializer_list<const char*> src) {
  std::vector<Polynomial> g;
  for (auto s : src) g.push_back(parse_poly(s, r));
  return g;
}

Polynomial monomial_of(const SplitEmbedding& emb, const std::vector<std::uint32_t>& mult) {
  const auto& gens = emb.semigroup().generators();
  Monomial m(emb.ring()->n());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += mult[k] * static_cast<std::uint32_t>(gens[k][i]);
  return Polynomial::from_terms(emb.ring(), {{m, 1}});
}

std::vector<Polynomial> random_monomial_ideal(const SplitEmbedding& emb, std::mt19937_64& rng, int max_gens,
                                              std::uint32_t max_mult) {
  std::vector<Polynomial> g;
  int k = std::uniform_int_distribution<int>(1, max_gens)(rng);
  for (int j = 0; j < k; ++j) {
    std::vector<std::uint32_t> mult(emb.semigroup().generators().size());
    for (auto& x : mult) x = std::uniform_int_distribution<std::uint32_t>(0, max_mult)(rng);
    g.push_back(monomial_of(emb, mult));
  }
  return g;
}

Polynomial random_r_element(const SplitEmbedding& emb, std::mt19937_64& rng, int terms, std::uint32_t max_mult) {
  Polynomial f = Polynomial::constant(emb.ring(), 0);
  for (int k = 0; k < terms; ++k) {
    std::vector<std::uint32_t> mult(emb.semigroup().generators().size());
    for (auto& x : mult) x = std::uniform_int_distribution<std::uint32_t>(0, max_mult)(rng);
    auto c = std::uniform_int_distribution<std::uint32_t>(1, emb.ring()->p() - 1)(rng);
    f = f + monomial_of(emb, mult) * Polynomial::constant(emb.ring(), c);
  }
  return f;
}

std::vector<Polynomial> power(const std::vector<Polynomial>& I, unsigned r) {
  return ideal_power(Ideal(I.front().ring(), I), r).gens();
}

std::set<IntVec> shifts(const CartierMaps& m) {
  std::set<IntVec> s;
  for (const auto& x : m.maps) s.insert(x.w);
  return s;
}

}  // namespace

TEST_CASE("maps on S are the standard extractions") {
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y"});
    auto emb = full_embedding(r, 8);
    for (unsigned e : {1u, 2u}) {
      auto q = static_cast<std::int64_t>(prime_power(p, e));
      auto maps = enumerate_maps(emb, e);
      CHECK(maps->stable);
      std::set<IntVec> expect;
      for (std::int64_t a = -(q - 1); a <= 0; ++a)
        for (std::int64_t b = -(q - 1); b <= 0; ++b) expect.insert({a, b});
      CHECK(shifts(*maps) == expect);
    }
  }
}

TEST_CASE("maps on F_2[x^2]") {
  auto r = make_ring(2, {"x"});
  auto emb = build_embedding({{2}}, r, 8);
  auto maps = enumerate_maps(emb, 1);
  CHECK(shifts(*maps) == std::set<IntVec>{{0}, {-2}});
  auto id = graded_map(emb, 1, {0});
  REQUIRE(id);
  CHECK(id->act(Monomial{4}) == Monomial{2});
  CHECK_FALSE(id->act(Monomial{2}));
  auto down = graded_map(emb, 1, {-2});
  REQUIRE(down);
  CHECK(down->act(Monomial{2}) == Monomial{0});
  CHECK(down->act(Monomial{6}) == Monomial{2});
  CHECK_FALSE(down->act(Monomial{4}));
  CHECK_FALSE(graded_map(emb, 1, {-1}));
  CHECK(graded_map(emb, 1, {2})->act(Monomial{2}) == Monomial{2});
}

TEST_CASE("cartier image examples") {
  for (std::uint32_t p : {2u, 3u}) {
    auto rs = make_ring(p, {"x", "y"});
    auto r4 = make_ring(p, {"x", "y", "u", "v"});
    std::vector<SplitEmbedding> embs{full_embedding(rs, 8), build_embedding({{2, 0}, {1, 1}, {0, 2}}, rs, 16),
                                     build_embedding({{1, 0, 1, 0}, {0, 1, 0, 1}}, r4, 8)};
    for (const auto& emb : embs)
      for (unsigned e : {1u, 2u}) {
        auto img = cartier_image({Polynomial::constant(emb.ring(), 1)}, emb, e);
        CHECK(img.stable);
        CHECK(r_ideal_equal(img.image, {Polynomial::constant(emb.ring(), 1)}, emb));
      }
  }

  auto r4 = make_ring(2, {"x", "y", "u", "v"});
  auto ex = build_embedding({{1, 0, 1, 0}, {0, 1, 0, 1}}, r4, 8);
  auto img = cartier_image(gens_of(r4, {"x*u - y*v"}), ex, 1);
  CHECK(r_ideal_equal(img.image, gens_of(r4, {"1"}), ex));

  auto r2 = make_ring(2, {"x", "y"});
  auto ver = build_embedding({{2, 0}, {1, 1}, {0, 2}}, r2, 16);
  auto v = cartier_image(gens_of(r2, {"x^2*y^2"}), ver, 1);
  CHECK(r_ideal_equal(v.image, gens_of(r2, {"x*y"}), ver));
  CHECK_THROWS(cartier_image(gens_of(r2, {"x"}), ver, 1));
}

TEST_CASE("d_image_equal_R") {
  auto r4 = make_ring(2, {"x", "y", "u", "v"});
  auto ex = build_embedding({{1, 0, 1, 0}, {0, 1, 0, 1}}, r4, 8);
  auto f2 = gens_of(r4, {"(x*u - y*v)^2"}), f3 = gens_of(r4, {"(x*u - y*v)^3"});
  CHECK(d_image_equal_R(f2, f2, ex, 1));
  oracle::TransportIso T(ex);
  FrobeniusContext ctx(T.target(), 1);
  bool expect = ideal_equal(eth_root(T.forward(f2), ctx), eth_root(T.forward(f3), ctx));
  CHECK(d_image_equal_R(f2, f3, ex, 1) == expect);
}

TEST_CASE("image contains the projection of the S-root") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u}) {
    auto rs = make_ring(p, {"x", "y"});
    auto r4 = make_ring(p, {"x", "y", "u", "v"});
    std::vector<SplitEmbedding> embs{build_embedding({{2, 0}, {1, 1}, {0, 2}}, rs, 16),
                                     build_embedding({{1, 0, 1, 0}, {0, 1, 0, 1}}, r4, 8)};
    for (const auto& emb : embs)
      for (int it = 0; it < 10; ++it) {
        std::vector<Polynomial> J{random_r_element(emb, rng, 3, 3)};
        if (J[0].is_zero()) continue;
        FrobeniusContext ctx(emb.ring(), 1);
        auto root = eth_root(Ideal(emb.ring(), J), ctx);
        std::vector<Polynomial> lower;
        const std::size_t n = emb.ring()->n();
        for (const auto& g : root.gens())
          for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            Monomial m(n);
            for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1;
            auto b = beta_project(g * Polynomial::from_terms(emb.ring(), {{m, 1}}), emb);
            if (!b.is_zero()) lower.push_back(b);
          }
        auto img = cartier_image(J, emb, 1);
        CHECK(r_ideal_contains(img.image, lower, emb));
      }
  }
}

TEST_CASE("transfer from S-roots to R-images") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y"});
    auto ver = build_embedding({{2, 0}, {1, 1}, {0, 2}}, r, 16);
    FrobeniusContext ctx(r, 1);
    for (int it = 0; it < 8; ++it) {
      auto I = random_monomial_ideal(ver, rng, 2, 2);
      std::vector<Ideal> roots;
      std::vector<std::vector<Polynomial>> images;
      for (unsigned k = 1; k <= 3; ++k) {
        auto Ik = power(I, k);
        roots.push_back(eth_root(Ideal(r, Ik), ctx));
        images.push_back(cartier_image(Ik, ver, 1).image);
      }
      for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b)
          if (ideal_equal(roots[a], roots[b])) CHECK(r_ideal_equal(images[a], images[b], ver));
    }
  }
}

TEST_CASE("image agrees with the root in the presentation ring") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u}) {
    auto r4 = make_ring(p, {"x", "y", "u", "v"});
    auto ex = build_embedding({{1, 0, 1, 0}, {0, 1, 0, 1}}, r4, 8);
    REQUIRE(ex.presentation().toric.gens().empty());
    oracle::TransportIso T(ex);
    for (unsigned e : {1u, 2u}) {
      FrobeniusContext ctx(T.target(), e);
      for (int it = 0; it < 10; ++it) {
        std::vector<Polynomial> J{random_r_element(ex, rng, 3, 4)};
        if (J[0].is_zero()) continue;
        auto expect = T.backward(eth_root(T.forward(J), ctx));
        CHECK(r_ideal_equal(cartier_image(J, ex, e).image, expect, ex));
      }
    }
  }
}

TEST_CASE("maps agree with the constraint solver") {
  auto r1 = make_ring(2, {"x"});
  auto sq = oracle::compare_pieces(build_embedding({{2}}, r1, 8), 1, 16, -8, 4);
  CHECK(sq.mismatches == 0);
  CHECK(sq.pieces > 0);
  auto r2 = make_ring(2, {"x", "y"});
  auto ver = oracle::compare_pieces(build_embedding({{2, 0}, {1, 1}, {0, 2}}, r2, 16), 1, 8, -4, 2);
  CHECK(ver.mismatches == 0);
  for (const auto& s : ver.notes) MESSAGE(s);
  CHECK(ver.pieces > 0);
}
