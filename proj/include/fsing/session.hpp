#ifndef FSING_SESSION_HPP
#define FSING_SESSION_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "fsing/bpoly.hpp"
#include "fsing/invariants.hpp"

namespace fsing {

/// Diagnostic tied to a line of a session file.
class SessionError : public Error {
public:
  SessionError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct SessionConfig {
  unsigned e_max = 3;
  std::int64_t box = 0;  // 0: default_box for q = p^e_max
  std::uint32_t m_floor = kDefaultMFloor;
  std::size_t max_basis = 20000;
  std::uint64_t max_degree = std::uint64_t{1} << 24;
};

/// Contents of a session file:
///   prime P / ring VARS... / subring WORDS or [ROWS] / poly NAME = EXPR /
///   ideal NAME = EXPR, EXPR... / set KEY VALUE, with `#` comments.
struct Session {
  std::string source;
  Ring ring;
  IntMat subring;
  std::shared_ptr<const SplitEmbedding> emb;
  std::map<std::string, Polynomial> polys;
  std::map<std::string, Gens> ideals;
  SessionConfig config;

  /// Default ambient: R when a subring is declared.
  Where where(const std::string& choice = "") const;

  /// A declared poly (as principal ideal) or ideal, the builtins m (maximal
  /// ideal of the ambient) and mS, or a comma-separated list of expressions.
  Gens ideal(const std::string& ref, Where where) const;
  Polynomial poly(const std::string& ref) const;
};

Session parse_session(std::istream& in, const std::string& source);
Session load_session(const std::string& path);

/// Parses `xu`, `x^2*y` or `[1,0,1]` into an exponent row.
IntVec parse_subring_word(const std::string& word, const Ring& ring);

}  // namespace fsing

#endif
