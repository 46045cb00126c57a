#ifndef FSING_SUMMAND_HPP
#define FSING_SUMMAND_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fsing/ideal.hpp"
#include "fsing/lattice.hpp"

namespace fsing {

/// Finitely generated Σ ⊆ ℕⁿ together with its group G(Σ).
class AffineSemigroup {
public:
  AffineSemigroup(std::size_t n, IntMat generators);

  std::size_t ambient() const { return n_; }
  const IntMat& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const Lattice& group() const { return lattice_; }
  std::int64_t max_coordinate() const;
  std::int64_t max_degree() const;

private:
  std::size_t n_;
  IntMat gens_;
  Lattice lattice_;
};

struct PurityCertificate {
  std::int64_t box = 0;
  bool verified = false;
  std::optional<IntVec> witness;
};

/// The auxiliary polynomial ring F_p[y_1..y_r] and the toric ideal T with
/// R ≅ F_p[y]/T.
struct Presentation {
  Ring aux;
  Ideal toric;
};

/// Multiplicities a_i with Σ a_i v_i = m.
using Decomposition = std::vector<std::uint32_t>;
using Decomposer = std::function<Decomposition(const Monomial&)>;

/// Pure affine semigroup ring R = F_p[x^{v_1}, ..., x^{v_r}] ⊆ S with its
/// monomial splitting β.
class SplitEmbedding {
public:
  const AffineSemigroup& semigroup() const { return sg_; }
  const Ring& ring() const { return ring_; }
  const PurityCertificate& certificate() const { return cert_; }
  std::uint64_t id() const { return id_; }

  /// Lattice plus nonnegativity; decisive for a verified embedding.
  bool contains_exponent(std::span<const std::int64_t> m) const;
  bool contains_monomial(const Monomial& m) const;
  /// Every monomial of f lies in Σ.
  bool contains(const Polynomial& f) const;

  /// Generator monomial x^{v_i} as a polynomial of S.
  Polynomial generator(std::size_t i) const;

  const Presentation& presentation() const;
  Decomposition decompose(const Monomial& m) const;

private:
  friend SplitEmbedding build_embedding(const IntMat&, const Ring&, std::int64_t);
  SplitEmbedding(AffineSemigroup sg, Ring ring, PurityCertificate cert);

  struct Cache;
  AffineSemigroup sg_;
  Ring ring_;
  PurityCertificate cert_;
  std::uint64_t id_;
  std::shared_ptr<Cache> cache_;
};

/// Cells of [0,B]^n the purity check may visit.
inline constexpr std::uint64_t kPurityCells = 50'000'000;

/// Default purity box: 4 * (max generator degree) * q_max, cut down to fit
/// kPurityCells but never below twice the max generator degree.
std::int64_t default_box(const IntMat& generators, std::uint64_t q_max);

/// Verifies Σ ∩ [0,B]^n = G(Σ) ∩ ℕⁿ ∩ [0,B]^n; throws PurityRejected with a
/// witness of minimal total degree otherwise.
SplitEmbedding build_embedding(const IntMat& generators, const Ring& ring, std::int64_t box);

/// Identity embedding R = S, generated by the unit vectors.
SplitEmbedding full_embedding(const Ring& ring, std::int64_t box);

/// β: drops the terms whose exponent is not in Σ.
Polynomial beta_project(const Polynomial& f, const SplitEmbedding& emb);

/// γ = β ∘ σ_e on R, σ_e extracting the component at box exponent 0.
Polynomial frobenius_splitting(const Polynomial& f, const SplitEmbedding& emb, unsigned e);

const Presentation& presentation(const SplitEmbedding& emb);

/// Greedy by generator index with backtracking. Throws DomainError for m ∉ Σ.
Decomposition monomial_decompose(const Monomial& m, const SplitEmbedding& emb);

/// Image of f ∈ R in F_p[y]; `decomposer` overrides the monomial lifts.
Polynomial lift(const Polynomial& f, const SplitEmbedding& emb, const Decomposer& decomposer = {});
/// Inverse direction: y^a ↦ x^{Σ a_i v_i}.
Polynomial push_down(const Polynomial& g, const SplitEmbedding& emb);

bool r_ideal_member(const Polynomial& f, const std::vector<Polynomial>& J, const SplitEmbedding& emb,
                    const Decomposer& decomposer = {});
/// J1 ⊆ J2 as ideals of R.
bool r_ideal_contains(const std::vector<Polynomial>& J2, const std::vector<Polynomial>& J1,
                      const SplitEmbedding& emb);
bool r_ideal_equal(const std::vector<Polynomial>& J1, const std::vector<Polynomial>& J2,
                   const SplitEmbedding& emb);

/// Every decomposition of m (up to `limit`), for invariance tests.
std::vector<Decomposition> all_decompositions(const Monomial& m, const SplitEmbedding& emb,
                                              std::size_t limit = 64);

IntVec to_ints(const Monomial& m);

}  // namespace fsing

#endif
