#ifndef FSING_EXPR_PARSER_HPP
#define FSING_EXPR_PARSER_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "fsing/error.hpp"
#include "fsing/ring.hpp"

namespace fsing {

// Recursive-descent parser for the shared expression grammar
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('+' | '-') factor | power
//   power  := atom ('^' integer)?
//   atom   := integer | identifier | '(' expr ')'
//
// The algebra supplies the value type and the arithmetic; the parser only
// tracks byte offsets for diagnostics.
template <class Algebra>
class ExprParser {
public:
  using Value = typename Algebra::Value;

  ExprParser(std::string_view src, Algebra& alg) : src_(src), alg_(alg) {}

  Value parse() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    Value v = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return v;
  }

private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) {
        v = alg_.add(std::move(v), term());
      } else if (accept('-')) {
        v = alg_.sub(std::move(v), term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (accept('*')) {
        v = alg_.mul(std::move(v), factor());
      } else {
        skip_ws();
        std::size_t at = pos_;
        if (!accept('/')) return v;
        v = alg_.div(std::move(v), factor(), at);
      }
    }
  }

  Value factor() {
    if (accept('-')) return alg_.neg(factor());
    if (accept('+')) return factor();
    return power();
  }

  Value power() {
    Value base = atom();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t at = pos_;
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      throw ParseError("expected exponent", at);
    std::uint64_t k = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      k = k * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
      if (k > kMaxExponent) throw ParseError("exponent overflow (> 2^31)", at);
      ++pos_;
    }
    return alg_.pow(std::move(base), k, at);
  }

  Value atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return alg_.integer(src_.substr(at, pos_ - at), at);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return alg_.variable(src_.substr(at, pos_ - at), at);
    }
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string_view src_;
  Algebra& alg_;
  std::size_t pos_ = 0;
};

}  // namespace fsing

#endif
