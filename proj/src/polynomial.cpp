#include "fsing/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fsing/error.hpp"
#include "fsing/expr_parser.hpp"
#include "fsing/modp.hpp"

namespace fsing {

// ---------------------------------------------------------------- ring

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

RingDescriptor::RingDescriptor(std::uint32_t p, std::vector<std::string> vars)
    : p_(p), vars_(std::move(vars)) {
  if (!modp::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p >= (std::uint32_t{1} << 31)) throw DomainError("characteristic must be below 2^31");
  std::unordered_set<std::string> seen;
  for (const auto& v : vars_) {
    if (!valid_identifier(v)) throw DomainError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw DomainError("duplicate variable name '" + v + "'");
  }
}

std::optional<std::size_t> RingDescriptor::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

Ring make_ring(std::uint32_t p, std::vector<std::string> vars) {
  return std::make_shared<const RingDescriptor>(p, std::move(vars));
}

// ---------------------------------------------------------------- monomials

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto x : e_) d += x;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint32_t x) { return x == 0; });
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    std::uint64_t s = std::uint64_t{e_[i]} + o.e_[i];
    if (s > kMaxExponent) throw OverflowError("exponent overflow (> 2^31)");
    r.e_[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
  return r;
}

Monomial Monomial::scaled(std::uint64_t k) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    std::uint64_t s = std::uint64_t{e_[i]} * k;
    if (e_[i] != 0 && (s / e_[i] != k || s > kMaxExponent))
      throw OverflowError("exponent overflow (> 2^31)");
    r.e_[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto x : e_) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
  return h;
}

// ---------------------------------------------------------------- orders

namespace {

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t from) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = from; i < a.size(); ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > from;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case OrderKind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case OrderKind::Grevlex:
      return grevlex_range(a, b, 0);
    case OrderKind::Block:
      for (std::size_t i = 0; i < block && i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return grevlex_range(a, b, std::min(block, a.size()));
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case OrderKind::Lex: return "lex";
    case OrderKind::Grevlex: return "grevlex";
    case OrderKind::Block: return "block(" + std::to_string(block) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------- polynomials

namespace {

const MonomialOrder kCanonical = MonomialOrder::grevlex();

void check_ring(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch();
}

}  // namespace

Polynomial Polynomial::constant(const Ring& ring, std::int64_t c) {
  Polynomial r(ring);
  std::uint32_t v = modp::reduce(c, ring->p());
  if (v) r.terms_.push_back({Monomial(ring->n()), v});
  return r;
}

Polynomial Polynomial::variable(const Ring& ring, std::size_t index) {
  Monomial m(ring->n());
  m[index] = 1;
  return monomial(ring, std::move(m));
}

Polynomial Polynomial::monomial(const Ring& ring, Monomial m, std::uint32_t coeff) {
  Polynomial r(ring);
  coeff %= ring->p();
  if (coeff) r.terms_.push_back({std::move(m), coeff});
  return r;
}

Polynomial Polynomial::from_terms(const Ring& ring, std::vector<Term> terms) {
  const std::uint32_t p = ring->p();
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return kCanonical.greater(a.mono, b.mono); });
  Polynomial r(ring);
  for (auto& t : terms) {
    std::uint32_t c = t.coeff % p;
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff = modp::add(r.terms_.back().coeff, c, p);
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back({std::move(t.mono), c});
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

std::uint64_t Polynomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::uint32_t Polynomial::coeff_of(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return 0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(*this, o);
  const std::uint32_t p = ring_->p();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = kCanonical.compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      std::uint32_t s = modp::add(terms_[i].coeff, o.terms_[j].coeff, p);
      if (s) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = modp::neg(t.coeff, ring_->p());
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(std::uint32_t c) const {
  c %= ring_->p();
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = modp::mul(t.coeff, c, ring_->p());
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, std::uint32_t c) const {
  c %= ring_->p();
  if (c == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, modp::mul(t.coeff, c, ring_->p())});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(*this, o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].mono, terms_[0].coeff);
  const std::uint32_t p = ring_->p();
  std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc[a.mono * b.mono] += modp::mul(a.coeff, b.coeff, p);
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    auto v = static_cast<std::uint32_t>(c % p);
    if (v) out.push_back({m, v});
  }
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return kCanonical.greater(a.mono, b.mono); });
  Polynomial r(ring_);
  r.terms_ = std::move(out);
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  const auto& vars = ring_->vars();
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (t.coeff != 1 || t.mono.is_one()) {
      os << t.coeff;
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (wrote) os << '*';
      os << vars[i];
      if (t.mono[i] > 1) os << '^' << t.mono[i];
      wrote = true;
    }
  }
  return os.str();
}

namespace {

// f^p in a prime field only rescales exponents.
Polynomial frobenius(const Polynomial& f) {
  std::vector<Polynomial::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.mono.scaled(f.ring()->p()), t.coeff});
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

}  // namespace

Polynomial pow(const Polynomial& f, std::uint64_t k) {
  const Ring& ring = f.ring();
  if (k == 0) return Polynomial::constant(ring, 1);
  if (f.is_zero()) return f;
  if (f.is_monomial()) {
    const auto& t = f.terms()[0];
    return Polynomial::monomial(ring, t.mono.scaled(k), modp::pow(t.coeff, k, ring->p()));
  }
  const std::uint32_t p = ring->p();
  unsigned frob = 0;
  while (k % p == 0) {
    k /= p;
    ++frob;
  }
  Polynomial result = Polynomial::constant(ring, 1);
  Polynomial base = f;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  for (unsigned i = 0; i < frob; ++i) result = frobenius(result);
  return result;
}

std::uint64_t prime_power(std::uint32_t p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxExponent) throw OverflowError("p^e exceeds 2^31");
  }
  return q;
}

std::vector<std::pair<Monomial, Polynomial>> pe_decompose(const Polynomial& f, unsigned e) {
  if (e == 0) throw DomainError("level e must be at least 1");
  const std::uint64_t q = prime_power(f.ring()->p(), e);
  const std::size_t n = f.ring()->n();
  std::unordered_map<Monomial, std::vector<Polynomial::Term>, MonomialHash> parts;
  for (const auto& t : f.terms()) {
    Monomial box(n), quo(n);
    for (std::size_t i = 0; i < n; ++i) {
      box[i] = static_cast<std::uint32_t>(t.mono[i] % q);
      quo[i] = static_cast<std::uint32_t>(t.mono[i] / q);
    }
    parts[box].push_back({std::move(quo), t.coeff});
  }
  std::vector<std::pair<Monomial, Polynomial>> out;
  out.reserve(parts.size());
  for (auto& [box, terms] : parts)
    out.emplace_back(box, Polynomial::from_terms(f.ring(), std::move(terms)));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return kCanonical.greater(a.first, b.first); });
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct PolyAlgebra {
  using Value = Polynomial;
  const Ring& ring;

  Value integer(std::string_view digits, std::size_t) const {
    std::uint64_t v = 0;
    for (char c : digits) v = (v * 10 + static_cast<std::uint64_t>(c - '0')) % ring->p();
    return Polynomial::constant(ring, static_cast<std::int64_t>(v));
  }
  Value variable(std::string_view name, std::size_t at) const {
    auto idx = ring->index_of(std::string(name));
    if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", at);
    return Polynomial::variable(ring, *idx);
  }
  Value add(Value a, Value b) const { return a + b; }
  Value sub(Value a, Value b) const { return a - b; }
  Value mul(Value a, Value b) const { return a * b; }
  Value neg(Value a) const { return -a; }
  Value pow(Value a, std::uint64_t k, std::size_t at) const {
    try {
      return fsing::pow(a, k);
    } catch (const OverflowError&) {
      throw ParseError("exponent overflow (> 2^31)", at);
    }
  }
  Value div(Value a, Value b, std::size_t at) const {
    if (!b.is_constant() || b.is_zero()) throw ParseError("division by a non-invertible element", at);
    return a.scaled(modp::inv(b.terms()[0].coeff, ring->p()));
  }
};

}  // namespace

Polynomial parse_poly(std::string_view src, const Ring& ring) {
  PolyAlgebra alg{ring};
  ExprParser<PolyAlgebra> parser(src, alg);
  return parser.parse();
}

}  // namespace fsing
