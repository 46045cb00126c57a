#ifndef FSING_LATTICE_HPP
#define FSING_LATTICE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fsing {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

/// Smith normal form U * A * W = D of an integer matrix A (rows x cols), with
/// U, W unimodular and D diagonal, each diagonal entry dividing the next.
struct SmithForm {
  IntMat U, W, D;
  std::vector<std::int64_t> diagonal;  // nonzero invariant factors, in order
};

SmithForm smith_normal_form(const IntMat& A, std::size_t cols);

/// Subgroup of Z^n generated by a finite set of vectors.
class Lattice {
public:
  Lattice(const IntMat& generators, std::size_t n);

  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return factors_.size(); }
  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  bool contains(std::span<const std::int64_t> v) const;
  /// Z-basis: rows d_i * (W^{-1})_i.
  IntMat basis() const;
  /// Coordinates of v in basis(), or nullopt when v is not in the lattice.
  std::optional<IntVec> coordinates(std::span<const std::int64_t> v) const;
  /// Calls visit(v) for every lattice point with lo <= v <= hi componentwise.
  void for_each_in_box(const IntVec& lo, const IntVec& hi, const std::function<void(const IntVec&)>& visit) const;

private:
  std::size_t n_;
  IntMat W_, W_inv_, hermite_;
  std::vector<std::int64_t> factors_;
};

}  // namespace fsing

#endif
