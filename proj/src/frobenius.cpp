#include "fsing/frobenius.hpp"

#include "fsing/error.hpp"

namespace fsing {

FrobeniusContext::FrobeniusContext(Ring ring, unsigned e)
    : ring_(std::move(ring)), e_(e), q_(prime_power(ring_->p(), e)) {
  if (e == 0) throw DomainError("level e must be at least 1");
}

Ideal bracket_power(const Ideal& I, const FrobeniusContext& ctx) {
  if (!same_ring(I.ring(), ctx.ring())) throw RingMismatch();
  std::vector<Polynomial> gens;
  gens.reserve(I.gens().size());
  for (const auto& g : I.gens()) gens.push_back(pow(g, ctx.q()));
  return Ideal(I.ring(), std::move(gens));
}

Ideal eth_root(const Ideal& I, const FrobeniusContext& ctx) {
  if (!same_ring(I.ring(), ctx.ring())) throw RingMismatch();
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens())
    for (auto& [box, part] : pe_decompose(g, ctx.e())) {
      if (part.is_constant()) return Ideal::unit(I.ring());
      gens.push_back(std::move(part));
    }
  return Ideal(I.ring(), minimalize_monomials(std::move(gens)));
}

Ideal d_image(const Ideal& I, const FrobeniusContext& ctx) {
  return bracket_power(eth_root(I, ctx), ctx);
}

}  // namespace fsing
