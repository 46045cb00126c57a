#ifndef FSING_ORACLE_HPP
#define FSING_ORACLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fsing/summand.hpp"

// Brute-force reference implementations. They share no algorithmic code with
// the main path: dense arrays instead of sparse terms, linear algebra instead
// of lattice combinatorics.

namespace fsing::oracle {

/// Largest t with f^t ∉ a^[q] for a monomial ideal a, by dense expansion.
std::uint64_t nu_dense(const Polynomial& f, const std::vector<Polynomial>& a, unsigned e);

/// Generators of the smallest b with I ⊆ b^[q]: the trace map applied to
/// x^b g for every box monomial x^b and generator g.
Ideal eth_root_dense(const Ideal& I, unsigned e);

struct PieceSolution {
  std::size_t dimension = 0;
  /// Basis of the solution space restricted to the inner box, each vector
  /// keyed by node exponent and normalized to leading coefficient 1.
  std::vector<std::map<IntVec, std::uint32_t>> basis;
  std::int64_t box = 0;
};

/// Solves the linear constraints on the scalars c_m of a degree-w map
/// x^m ↦ c_m x^{(m+w)/q} over F_p. Nodes are Σ ∩ [0, 4·box]^n; the result is
/// projected to [0, box]^n and must agree with the one from [0, 2·box]^n,
/// otherwise ResourceBound is thrown.
PieceSolution cartier_piece_solver(const SplitEmbedding& emb, unsigned e, const IntVec& w, std::int64_t box);

struct PieceComparison {
  std::size_t shifts = 0;      // degrees examined
  std::size_t pieces = 0;      // nonzero pieces found by the solver
  std::size_t mismatches = 0;
  std::vector<std::string> notes;
};

/// Solver versus graded_map at every w ∈ [lo, hi]^n: dimension, and the value
/// of the map on each node of Σ ∩ [0, box]^n.
PieceComparison compare_pieces(const SplitEmbedding& emb, unsigned e, std::int64_t box, std::int64_t lo,
                               std::int64_t hi);

/// Ring isomorphism R ≅ F_p[a, b, ...] for an embedding with linearly
/// independent generators.
class TransportIso {
public:
  explicit TransportIso(const SplitEmbedding& emb);

  const Ring& target() const { return target_; }
  Polynomial forward(const Polynomial& f) const;
  Polynomial backward(const Polynomial& g) const;
  Ideal forward(const std::vector<Polynomial>& gens) const;
  std::vector<Polynomial> backward(const Ideal& I) const;

private:
  Ring source_, target_;
  IntMat gens_;
  std::vector<std::size_t> pivots_;   // coordinates that determine the multiplicities
  std::vector<std::vector<std::int64_t>> inv_num_;  // inverse of the pivot block, over inv_den_
  std::int64_t inv_den_ = 1;
};

}  // namespace fsing::oracle

#endif
