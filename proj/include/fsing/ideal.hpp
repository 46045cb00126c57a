#ifndef FSING_IDEAL_HPP
#define FSING_IDEAL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fsing/polynomial.hpp"

namespace fsing {

/// Explicit caps for Buchberger. Exceeding any of them raises ResourceBound.
struct GroebnerLimits {
  std::size_t max_basis = 20000;
  std::uint64_t max_degree = std::uint64_t{1} << 24;
  std::size_t max_reductions = 2'000'000;
};

/// Process-wide defaults, read by every Gröbner computation.
GroebnerLimits& groebner_limits();

class Ideal {
public:
  /// Zero generators are dropped.
  Ideal(Ring ring, std::vector<Polynomial> gens);
  explicit Ideal(const Polynomial& f);

  static Ideal zero(const Ring& ring) { return Ideal(ring, {}); }
  static Ideal unit(const Ring& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& gens() const { return gens_; }

  /// Reduced Gröbner basis, computed once per order and cached.
  const std::vector<Polynomial>& basis(const MonomialOrder& order = MonomialOrder::grevlex()) const;

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;
  bool is_monomial() const;

  /// Remainder of f modulo the reduced basis for `order`.
  Polynomial reduce(const Polynomial& f, const MonomialOrder& order = MonomialOrder::grevlex()) const;

  /// "(g1, g2, ...)" over the given generators.
  std::string to_string() const;
  /// Same format over the reduced grevlex basis.
  std::string canonical_string() const;

private:
  struct Slot;
  struct Cache;
  const Slot& slot(const MonomialOrder& order) const;

  Ring ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Reduced basis: monic, sorted by ascending leading monomial.
std::vector<Polynomial> groebner_basis(const Ideal& I, const MonomialOrder& order);

/// Leading monomial of f under `order`; f must be nonzero.
const Monomial& leading_monomial(const Polynomial& f, const MonomialOrder& order);

Polynomial normal_form(const Polynomial& f, const Ideal& I,
                       const MonomialOrder& order = MonomialOrder::grevlex());
bool ideal_member(const Polynomial& f, const Ideal& I);
/// J ⊆ I.
bool ideal_contains(const Ideal& I, const Ideal& J);
bool ideal_equal(const Ideal& I, const Ideal& J);

/// I ∩ F_p[keep_vars], returned in a ring of the kept variables (original order).
Ideal eliminate(const Ideal& I, const std::vector<std::string>& keep_vars);

/// f^N ∈ I for some N, decided through 1 ∈ I + (1 - t f).
bool radical_member(const Polynomial& f, const Ideal& I);

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);
/// I^t from degree-t products of generators. Principal ideals take a single
/// power; monomial ideals are minimalized.
Ideal ideal_power(const Ideal& I, std::uint64_t t);

/// Drops monomial generators divisible by another generator. Non-monomial
/// generators pass through untouched.
std::vector<Polynomial> minimalize_monomials(std::vector<Polynomial> gens);

/// Copy of f in `target`, sending variable i of f's ring to variable
/// `index_map[i]` of the target.
Polynomial remap(const Polynomial& f, const Ring& target, const std::vector<std::size_t>& index_map);

/// Name not used by the ring, derived from `stem`.
std::string fresh_name(const RingDescriptor& ring, const std::string& stem);

}  // namespace fsing

#endif
