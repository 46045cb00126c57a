#include "fsing/fraction.hpp"

#include <charconv>

namespace fsing {

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("malformed rational '" + whole + "'", 0);
  return v;
}

}  // namespace

Fraction parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Fraction(parse_int(s, s));
  std::int64_t d = parse_int(std::string_view(s).substr(slash + 1), s);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
  return Fraction(parse_int(std::string_view(s).substr(0, slash), s), d);
}

}  // namespace fsing
