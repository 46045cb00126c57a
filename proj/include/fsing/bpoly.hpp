#ifndef FSING_BPOLY_HPP
#define FSING_BPOLY_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsing/invariants.hpp"

namespace fsing {

using Rational = boost::multiprecision::cpp_rational;

/// Monic polynomial in s over ℚ; coefficient i belongs to s^i.
class BPolynomial {
public:
  BPolynomial(std::vector<Rational> coeffs, std::string provenance = "user");

  /// Expression grammar in the single symbol s, rational coefficients allowed.
  static BPolynomial parse(std::string_view src, std::string provenance = "user");

  const std::vector<Rational>& coeffs() const { return c_; }
  std::size_t degree() const { return c_.size() - 1; }
  const std::string& provenance() const { return provenance_; }
  std::string to_string() const;

  BPolynomial operator*(const BPolynomial& o) const;
  bool operator==(const BPolynomial& o) const { return c_ == o.c_; }

private:
  std::vector<Rational> c_;
  std::string provenance_;
};

struct ModPPolynomial {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> coeffs;

  std::uint32_t eval(std::uint64_t s) const;
  std::string to_string() const;
  ModPPolynomial operator*(const ModPPolynomial& o) const;
  bool operator==(const ModPPolynomial& o) const { return p == o.p && coeffs == o.coeffs; }
};

/// Throws DomainError("p excluded ...") when p divides a denominator.
ModPPolynomial reduce_mod_p(const BPolynomial& b, std::uint32_t p);

/// Remainder of b on division by d over ℚ.
std::vector<Rational> remainder(const BPolynomial& b, const BPolynomial& d);
bool divides(const BPolynomial& d, const BPolynomial& b);

constexpr std::uint32_t kDefaultMFloor = 3;

struct BCheckEntry {
  unsigned e = 0;
  std::uint64_t nu = 0;
  std::uint32_t residue = 0;
  std::string verdict;  // pass, fail, inconclusive-small-p
};

struct BCheckReport {
  std::string mode;  // threshold or jump
  std::string f, b, where;
  std::uint32_t p = 0;
  std::uint32_t m_floor = kDefaultMFloor;
  std::vector<BCheckEntry> entries;

  bool any_fail() const;
  bool all_pass() const;
};

/// b(ν^a_f(p^e)) mod p for e in [e_lo, e_hi].
BCheckReport bs_threshold_check(const BPolynomial& b, const Polynomial& f, const Gens& a, unsigned e_lo,
                                unsigned e_hi, Where where, std::uint32_t m_floor = kDefaultMFloor);

/// b(ν) mod p at every ν in [nu_lo, nu_hi] with C^e(f^ν) ≠ C^e(f^{ν+1}).
BCheckReport bs_jump_check(const BPolynomial& b, const Polynomial& f, unsigned e, std::uint64_t nu_lo,
                           std::uint64_t nu_hi, Where where, std::uint32_t m_floor = kDefaultMFloor);

using Catalog = std::map<std::string, BPolynomial>;

/// Reads lines `bpoly <key> = <expr>`; `#` starts a comment.
Catalog load_catalog(std::istream& in, const std::string& source);
/// Shipped entries: the variable, and xu - yv over its summand and over S.
const Catalog& builtin_catalog();
/// Keys k with both k:R and k:S present.
std::vector<std::string> catalog_pairs(const Catalog& c);

}  // namespace fsing

#endif
