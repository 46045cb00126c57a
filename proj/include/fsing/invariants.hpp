#ifndef FSING_INVARIANTS_HPP
#define FSING_INVARIANTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsing/cartier.hpp"
#include "fsing/fraction.hpp"
#include "fsing/frobenius.hpp"

namespace fsing {

/// Ambient ring of a computation: S itself, or the summand R of an embedding.
struct Where {
  const SplitEmbedding* emb = nullptr;

  static Where S() { return {}; }
  static Where R(const SplitEmbedding& e) { return {&e}; }
  bool in_r() const { return emb != nullptr; }
  std::string tag() const { return emb ? "R" : "S"; }
};

using Gens = std::vector<Polynomial>;

struct NuOptions {
  /// R-mode only: decide J^t ⊆ a^[q] through the presentation of R instead of
  /// in S.
  bool r_presentation = false;
  bool recheck = true;
};

struct NuResult {
  Gens J, a;
  std::string where;
  std::uint32_t p = 0;
  unsigned e = 0;
  std::uint64_t q = 0;
  std::uint64_t value = 0;
  Fraction ratio;
  std::uint64_t seed = 0;      // search upper bound, J^seed ⊆ a^[q]
  bool bounds_checked = false;  // J^ν ⊄ a^[q] and J^{ν+1} ⊆ a^[q] confirmed after the search
};

NuResult nu(const Gens& J, const Gens& a, unsigned e, Where where, const NuOptions& opt = {});

/// J^t ⊆ a^[q] decided in S (or through the presentation with r_presentation).
bool power_contained(const Gens& J, std::uint64_t t, const Gens& a, unsigned e, Where where,
                     const NuOptions& opt = {});

struct ThresholdEstimate {
  struct Step {
    unsigned e;
    std::uint64_t nu;
    Fraction ratio;
  };
  std::vector<Step> steps;
  bool monotone = true;  // ratios nondecreasing in e
};

/// ν^m_f(p^e)/p^e for e = 1..e_max.
ThresholdEstimate fpt_truncation(const Polynomial& f, const Gens& m, unsigned e_max, Where where);

struct TestIdealResult {
  Gens I;
  Fraction lambda;
  std::vector<Gens> chain;  // chain[k] is the level k+1 ideal
  bool stabilized = false;
  unsigned e_star = 0;
  Gens tau;
  bool ascending = true;
  bool maps_stable = true;
};

/// Level ideal C^e(I^a): eth_root in S, Cartier image in R.
Gens level_ideal(const Gens& I, std::uint64_t a, unsigned e, Where where, bool* stable = nullptr);

/// big ⊇ small, as ideals of S or R.
bool level_contains(const Gens& big, const Gens& small, Where where);
bool level_equal(const Gens& a, const Gens& b, Where where);

TestIdealResult test_ideal(const Gens& I, Fraction lambda, unsigned e_max, Where where);

struct JumpCandidate {
  Fraction lambda;
  std::uint64_t a = 0;
  Gens before, after;
};

struct JumpSpectrum {
  std::string where;
  Gens I;
  unsigned e = 0;
  std::uint64_t q = 0;
  Fraction range;
  std::vector<JumpCandidate> candidates;
  bool maps_stable = true;
  std::optional<std::vector<Fraction>> next_level;
  bool refinement_consistent = true;

  std::vector<Fraction> lambdas() const;
};

JumpSpectrum jump_spectrum(const Gens& I, unsigned e, Fraction range, Where where, bool refine = false);

struct SummandVerdict {
  Fraction lambda;
  bool survives = false;
};

struct SummandReport {
  std::vector<SummandVerdict> verdicts;
  std::vector<Fraction> survivors;
};

SummandReport summand_filter(const Gens& I, const SplitEmbedding& emb, unsigned e, const JumpSpectrum& s_spectrum);

struct CyclicWitness {
  unsigned e_prime = 0;
  bool verified = false;
};

/// Smallest e' in [e, e_max] with f^{p^e' - p^e} ∈ D^(e')·f^{p^e' - 1}, decided in S.
CyclicWitness cyclic_witness(const Polynomial& f, unsigned e, unsigned e_max, Where where);

}  // namespace fsing

#endif
