#include "fsing/bpoly.hpp"

#include <sstream>

#include "fsing/error.hpp"
#include "fsing/expr_parser.hpp"
#include "fsing/modp.hpp"

namespace fsing {

namespace {

using Coeffs = std::vector<Rational>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

struct RationalAlgebra {
  using Value = Coeffs;

  Value integer(std::string_view digits, std::size_t) const {
    return {Rational(boost::multiprecision::cpp_int(std::string(digits)))};
  }
  Value variable(std::string_view name, std::size_t at) const {
    if (name != "s") throw ParseError("unknown symbol '" + std::string(name) + "' (only s allowed)", at);
    return {Rational(0), Rational(1)};
  }
  Value add(Value a, Value b) const {
    if (a.size() < b.size()) std::swap(a, b);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
  }
  Value sub(Value a, Value b) const { return add(std::move(a), neg(std::move(b))); }
  Value mul(Value a, Value b) const { return fsing::mul(a, b); }
  Value neg(Value a) const {
    for (auto& x : a) x = -x;
    return a;
  }
  Value pow(Value a, std::uint64_t k, std::size_t at) const {
    if (k > 4096) throw ParseError("exponent too large for a b-polynomial", at);
    Value r{Rational(1)};
    for (std::uint64_t i = 0; i < k; ++i) r = fsing::mul(r, a);
    return r;
  }
  Value div(Value a, Value b, std::size_t at) const {
    if (b.size() != 1) throw ParseError("division by a non-constant", at);
    for (auto& x : a) x /= b[0];
    return a;
  }
};

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

std::uint32_t reduce_int(const boost::multiprecision::cpp_int& v, std::uint32_t p) {
  boost::multiprecision::cpp_int r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

BPolynomial::BPolynomial(std::vector<Rational> coeffs, std::string provenance)
    : c_(std::move(coeffs)), provenance_(std::move(provenance)) {
  trim(c_);
  if (c_.empty()) throw DomainError("b-polynomial must be nonzero");
  Rational lead = c_.back();
  for (auto& x : c_) x /= lead;
}

BPolynomial BPolynomial::parse(std::string_view src, std::string provenance) {
  RationalAlgebra alg;
  ExprParser<RationalAlgebra> parser(src, alg);
  return BPolynomial(parser.parse(), std::move(provenance));
}

std::string BPolynomial::to_string() const {
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational c = c_[i];
    bool negative = c < 0;
    if (negative) c = -c;
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    std::string mono = i == 0 ? "" : (i == 1 ? "s" : "s^" + std::to_string(i));
    if (mono.empty()) out += rational_string(c);
    else if (c == 1) out += mono;
    else out += rational_string(c) + "*" + mono;
  }
  return out;
}

BPolynomial BPolynomial::operator*(const BPolynomial& o) const {
  return BPolynomial(mul(c_, o.c_), provenance_ + " * " + o.provenance_);
}

std::uint32_t ModPPolynomial::eval(std::uint64_t s) const {
  std::uint32_t x = static_cast<std::uint32_t>(s % p), acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = modp::add(modp::mul(acc, x, p), coeffs[i], p);
  return acc;
}

std::string ModPPolynomial::to_string() const {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (!coeffs[i]) continue;
    if (!out.empty()) out += " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? "s" : "s^" + std::to_string(i));
    if (mono.empty()) out += std::to_string(coeffs[i]);
    else if (coeffs[i] == 1) out += mono;
    else out += std::to_string(coeffs[i]) + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

ModPPolynomial ModPPolynomial::operator*(const ModPPolynomial& o) const {
  ModPPolynomial r{p, std::vector<std::uint32_t>(coeffs.size() + o.coeffs.size() - 1, 0)};
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs.size(); ++j)
      r.coeffs[i + j] = modp::add(r.coeffs[i + j], modp::mul(coeffs[i], o.coeffs[j], p), p);
  while (r.coeffs.size() > 1 && r.coeffs.back() == 0) r.coeffs.pop_back();
  return r;
}

ModPPolynomial reduce_mod_p(const BPolynomial& b, std::uint32_t p) {
  if (!modp::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  ModPPolynomial r{p, {}};
  for (const auto& c : b.coeffs()) {
    std::uint32_t den = reduce_int(boost::multiprecision::denominator(c), p);
    if (den == 0)
      throw DomainError("p excluded: " + std::to_string(p) + " divides a denominator of " + b.to_string());
    r.coeffs.push_back(modp::mul(reduce_int(boost::multiprecision::numerator(c), p), modp::inv(den, p), p));
  }
  return r;
}

std::vector<Rational> remainder(const BPolynomial& b, const BPolynomial& d) {
  Coeffs r = b.coeffs();
  const Coeffs& dv = d.coeffs();  // monic
  while (r.size() >= dv.size()) {
    Rational lead = r.back();
    std::size_t shift = r.size() - dv.size();
    for (std::size_t i = 0; i < dv.size(); ++i) r[shift + i] -= lead * dv[i];
    r.pop_back();
    trim(r);
  }
  return r;
}

bool divides(const BPolynomial& d, const BPolynomial& b) { return remainder(b, d).empty(); }

bool BCheckReport::any_fail() const {
  return std::any_of(entries.begin(), entries.end(), [](const BCheckEntry& e) { return e.verdict == "fail"; });
}

bool BCheckReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const BCheckEntry& e) { return e.verdict == "pass"; });
}

namespace {

std::string verdict(std::uint32_t residue, std::uint32_t p, std::uint32_t m_floor) {
  if (residue == 0) return "pass";
  return p <= m_floor ? "inconclusive-small-p" : "fail";
}

}  // namespace

BCheckReport bs_threshold_check(const BPolynomial& b, const Polynomial& f, const Gens& a, unsigned e_lo,
                                unsigned e_hi, Where where, std::uint32_t m_floor) {
  if (e_lo == 0 || e_hi < e_lo) throw DomainError("invalid e range");
  BCheckReport rep;
  rep.mode = "threshold";
  rep.f = f.to_string();
  rep.b = b.to_string();
  rep.where = where.tag();
  rep.p = f.ring()->p();
  rep.m_floor = m_floor;
  ModPPolynomial bp = reduce_mod_p(b, rep.p);
  for (unsigned e = e_lo; e <= e_hi; ++e) {
    auto r = nu({f}, a, e, where);
    std::uint32_t res = bp.eval(r.value);
    rep.entries.push_back({e, r.value, res, verdict(res, rep.p, m_floor)});
  }
  return rep;
}

BCheckReport bs_jump_check(const BPolynomial& b, const Polynomial& f, unsigned e, std::uint64_t nu_lo,
                           std::uint64_t nu_hi, Where where, std::uint32_t m_floor) {
  if (nu_hi < nu_lo) throw DomainError("invalid ν range");
  BCheckReport rep;
  rep.mode = "jump";
  rep.f = f.to_string();
  rep.b = b.to_string();
  rep.where = where.tag();
  rep.p = f.ring()->p();
  rep.m_floor = m_floor;
  ModPPolynomial bp = reduce_mod_p(b, rep.p);
  Gens cur = level_ideal({f}, nu_lo, e, where);
  for (std::uint64_t v = nu_lo; v <= nu_hi; ++v) {
    Gens next = level_ideal({f}, v + 1, e, where);
    if (!level_contains(next, cur, where)) {
      std::uint32_t res = bp.eval(v);
      rep.entries.push_back({e, v, res, verdict(res, rep.p, m_floor)});
    }
    cur = std::move(next);
  }
  return rep;
}

Catalog load_catalog(std::istream& in, const std::string& source) {
  Catalog c;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word, key, eq;
    if (!(ls >> word)) continue;
    auto where = source + ":" + std::to_string(lineno);
    if (word != "bpoly") throw ParseError(where + ": expected 'bpoly'", 0);
    if (!(ls >> key >> eq) || eq != "=") throw ParseError(where + ": expected 'bpoly <key> = <expr>'", 0);
    std::string expr;
    std::getline(ls, expr);
    try {
      c.insert_or_assign(key, BPolynomial::parse(expr, where));
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.message(), e.offset());
    }
  }
  return c;
}

const Catalog& builtin_catalog() {
  static const Catalog c = [] {
    std::istringstream in(
        "# b-function of a coordinate\n"
        "bpoly variable = s+1\n"
        "# f = xu - yv: over F[xu,yv], which is a polynomial ring in two variables\n"
        "bpoly xu-yv:R = s+1\n"
        "# f = xu - yv: over F[x,y,u,v], a nondegenerate quadric in four variables\n"
        "bpoly xu-yv:S = (s+1)*(s+2)\n");
    return load_catalog(in, "builtin");
  }();
  return c;
}

std::vector<std::string> catalog_pairs(const Catalog& c) {
  std::vector<std::string> out;
  for (const auto& [key, b] : c) {
    if (key.size() < 2 || key.substr(key.size() - 2) != ":R") continue;
    std::string stem = key.substr(0, key.size() - 2);
    if (c.count(stem + ":S")) out.push_back(stem);
  }
  return out;
}

}  // namespace fsing
