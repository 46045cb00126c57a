#ifndef FSING_POLYNOMIAL_HPP
#define FSING_POLYNOMIAL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsing/ring.hpp"

namespace fsing {

/// Sparse polynomial over F_p. Terms are kept in descending grevlex order with
/// nonzero coefficients in [0, p), so equal polynomials have equal term lists.
class Polynomial {
public:
  struct Term {
    Monomial mono;
    std::uint32_t coeff;
    bool operator==(const Term& o) const { return coeff == o.coeff && mono == o.mono; }
  };

  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const Ring& ring, std::int64_t c);
  static Polynomial variable(const Ring& ring, std::size_t index);
  static Polynomial monomial(const Ring& ring, Monomial m, std::uint32_t coeff = 1);
  /// Combines duplicates, drops zeros and sorts.
  static Polynomial from_terms(const Ring& ring, std::vector<Term> terms);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::uint64_t degree() const;
  std::uint32_t coeff_of(const Monomial& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(std::uint32_t c) const;
  Polynomial times_monomial(const Monomial& m, std::uint32_t c = 1) const;

  bool operator==(const Polynomial& o) const { return same_ring(ring_, o.ring_) && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Canonical text: descending grevlex, `*` between factors, `^` for powers.
  std::string to_string() const;

private:
  Ring ring_;
  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& f, std::uint64_t k);

/// q = p^e, rejecting results above 2^31.
std::uint64_t prime_power(std::uint32_t p, unsigned e);

/// Components g_a of f = sum_a g_a^(p^e) x^a over box monomials a in [0, p^e)^n.
/// Only nonzero components are returned, ordered by descending grevlex on a.
std::vector<std::pair<Monomial, Polynomial>> pe_decompose(const Polynomial& f, unsigned e);

/// Parses the polynomial grammar (sums, products, `^k`, parentheses, integer
/// constants, `/ integer` for modular inverses).
Polynomial parse_poly(std::string_view src, const Ring& ring);

}  // namespace fsing

#endif
