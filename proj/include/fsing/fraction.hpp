#ifndef FSING_FRACTION_HPP
#define FSING_FRACTION_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "fsing/error.hpp"

namespace fsing {

/// Reduced fraction with positive denominator.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (d == 0) throw DomainError("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  /// ⌈k · this⌉ for k ≥ 0.
  std::int64_t ceil_times(std::int64_t k) const {
    __int128 t = static_cast<__int128>(num) * k;
    __int128 q = t / den;
    if (t % den != 0 && t > 0) ++q;
    return static_cast<std::int64_t>(q);
  }

  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
};

/// Parses "a/b" or "a".
Fraction parse_fraction(const std::string& s);

}  // namespace fsing

#endif
