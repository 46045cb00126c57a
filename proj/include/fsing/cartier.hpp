#ifndef FSING_CARTIER_HPP
#define FSING_CARTIER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fsing/summand.hpp"

namespace fsing {

/// Monomial p^{-e}-linear map x^m ↦ x^{(m+w)/q} on R, zero off the class of
/// -w in G/qG.
struct ToricCartierMap {
  IntVec w;
  unsigned e = 0;
  std::uint64_t q = 0;
  IntVec live_class;               // coordinates mod q of the class read by the map
  std::vector<IntVec> zero_mask;   // other classes with integral target, sent to 0
  std::shared_ptr<const Lattice> group;

  /// Image of x^m, or nullopt for zero.
  std::optional<Monomial> act(const Monomial& m) const;
  Polynomial apply(const Polynomial& f) const;
};

struct CartierMaps {
  std::vector<ToricCartierMap> maps;  // minimal shifts; every other valid shift is w + q s, s ∈ Σ
  std::int64_t window = 0;            // upper coordinate bound of the search
  bool stable = false;                // unchanged when the window doubles
};

/// Minimal valid shifts at level e. window = 0 picks q·(max coordinate) and
/// doubles until the set stabilizes; throws ResourceBound otherwise.
std::shared_ptr<const CartierMaps> enumerate_maps(const SplitEmbedding& emb, unsigned e, std::int64_t window = 0);

/// The graded piece of degree w: the map when w is a valid shift.
std::optional<ToricCartierMap> graded_map(const SplitEmbedding& emb, unsigned e, const IntVec& w);

struct CartierImage {
  std::vector<Polynomial> source;
  unsigned e = 0;
  std::vector<Polynomial> image;  // generators in R
  std::int64_t window = 0;
  bool stable = false;
  std::size_t maps = 0;
};

/// C^e_R J: ideal of R generated by every φ(g), φ a graded Cartier map.
CartierImage cartier_image(const std::vector<Polynomial>& J, const SplitEmbedding& emb, unsigned e);

bool d_image_equal_R(const std::vector<Polynomial>& J1, const std::vector<Polynomial>& J2,
                     const SplitEmbedding& emb, unsigned e);

/// x^a divides x^b in R.
bool r_divides(const Monomial& a, const Monomial& b, const SplitEmbedding& emb);

/// Drops monomial generators divisible in R by another, and duplicates.
std::vector<Polynomial> minimalize_in_r(std::vector<Polynomial> gens, const SplitEmbedding& emb);

}  // namespace fsing

#endif
