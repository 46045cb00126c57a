#ifndef FSING_RING_HPP
#define FSING_RING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace fsing {

/// Prime characteristic and ordered variable names of F_p[x_1..x_n].
class RingDescriptor {
public:
  RingDescriptor(std::uint32_t p, std::vector<std::string> vars);

  std::uint32_t p() const { return p_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t n() const { return vars_.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool operator==(const RingDescriptor& o) const { return p_ == o.p_ && vars_ == o.vars_; }

private:
  std::uint32_t p_;
  std::vector<std::string> vars_;
};

using Ring = std::shared_ptr<const RingDescriptor>;

Ring make_ring(std::uint32_t p, std::vector<std::string> vars);

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

bool valid_identifier(const std::string& s);

/// Largest admissible exponent of a single variable.
inline constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 31;

class Monomial {
public:
  using Exps = boost::container::small_vector<std::uint32_t, 8>;

  Monomial() = default;
  explicit Monomial(std::size_t n) : e_(n, 0) {}
  explicit Monomial(Exps e) : e_(std::move(e)) {}
  Monomial(std::initializer_list<std::uint32_t> e) : e_(e.begin(), e.end()) {}

  std::size_t size() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  const Exps& exps() const { return e_; }

  std::uint64_t degree() const;
  bool is_one() const;
  bool divides(const Monomial& o) const;

  /// Throws OverflowError past kMaxExponent.
  Monomial operator*(const Monomial& o) const;
  /// Requires divides(o) from the right: returns this / o.
  Monomial operator/(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial scaled(std::uint64_t k) const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  std::size_t hash() const;

private:
  Exps e_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class OrderKind { Lex, Grevlex, Block };

/// Block order: lex on the first `block` variables, grevlex on the rest.
struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  std::size_t block = 0;

  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder grevlex() { return {OrderKind::Grevlex, 0}; }
  static MonomialOrder block_lex_grevlex(std::size_t k) { return {OrderKind::Block, k}; }

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  bool operator==(const MonomialOrder& o) const { return kind == o.kind && block == o.block; }
  std::string name() const;
};

}  // namespace fsing

#endif
