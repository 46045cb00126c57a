#ifndef FSING_MODP_HPP
#define FSING_MODP_HPP

#include <cstdint>

#include "fsing/error.hpp"

namespace fsing::modp {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}

inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

inline std::uint32_t pow(std::uint32_t a, std::uint64_t k, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (k) {
    if (k & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    k >>= 1;
  }
  return r;
}

inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse mod " + std::to_string(p));
  return pow(a, p - 2, p);
}

/// Residue of a signed integer.
inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace fsing::modp

#endif
