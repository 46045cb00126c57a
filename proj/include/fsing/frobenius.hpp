#ifndef FSING_FROBENIUS_HPP
#define FSING_FROBENIUS_HPP

#include <cstdint>

#include "fsing/ideal.hpp"

namespace fsing {

/// Level e of the Frobenius iterate on a ring, with q = p^e.
class FrobeniusContext {
public:
  FrobeniusContext(Ring ring, unsigned e);

  const Ring& ring() const { return ring_; }
  unsigned e() const { return e_; }
  std::uint64_t q() const { return q_; }

private:
  Ring ring_;
  unsigned e_;
  std::uint64_t q_;
};

/// I^[q], generated by the q-th powers of the generators of I.
Ideal bracket_power(const Ideal& I, const FrobeniusContext& ctx);

/// C^e I: the smallest ideal b with I ⊆ b^[q]. Generated by the components
/// of the generators of I in the free basis of S over S^q.
Ideal eth_root(const Ideal& I, const FrobeniusContext& ctx);

/// Smallest D^(e)-stable ideal containing I, i.e. (C^e I)^[q].
Ideal d_image(const Ideal& I, const FrobeniusContext& ctx);

}  // namespace fsing

#endif
