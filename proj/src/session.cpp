#include "fsing/session.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fsing/error.hpp"
#include "fsing/modp.hpp"

namespace fsing {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 18)
    throw DomainError(what + " must be a nonnegative integer, got '" + s + "'");
  return std::stoull(s);
}

Gens maximal_s(const Ring& r) {
  Gens g;
  for (std::size_t i = 0; i < r->n(); ++i) g.push_back(Polynomial::variable(r, i));
  return g;
}

}  // namespace

IntVec parse_subring_word(const std::string& word, const Ring& ring) {
  const std::size_t n = ring->n();
  IntVec row(n, 0);
  if (word.empty()) throw DomainError("empty subring generator");
  if (word.front() == '[') {
    if (word.back() != ']') throw DomainError("unterminated exponent row '" + word + "'");
    auto parts = split_top_level(word.substr(1, word.size() - 2), ',');
    if (parts.size() != n)
      throw DomainError("exponent row '" + word + "' has " + std::to_string(parts.size()) + " entries, ring has " +
                        std::to_string(n) + " variables");
    for (std::size_t i = 0; i < n; ++i) row[i] = static_cast<std::int64_t>(parse_uint(parts[i], "exponent"));
    return row;
  }
  if (word.find_first_of("*^") != std::string::npos) {
    auto f = parse_poly(word, ring);
    if (f.terms().size() != 1 || f.terms()[0].coeff != 1) throw DomainError("'" + word + "' is not a monomial");
    for (std::size_t i = 0; i < n; ++i) row[i] = f.terms()[0].mono[i];
    return row;
  }
  // Concatenated variable names, longest match first.
  std::size_t at = 0;
  while (at < word.size()) {
    std::size_t best = n, len = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = ring->vars()[i];
      if (v.size() > len && word.compare(at, v.size(), v) == 0) {
        best = i;
        len = v.size();
      }
    }
    if (best == n) throw DomainError("cannot read '" + word + "' as a word in the ring variables");
    ++row[best];
    at += len;
  }
  return row;
}

Where Session::where(const std::string& choice) const {
  if (choice.empty()) return emb ? Where::R(*emb) : Where::S();
  if (choice == "S") return Where::S();
  if (choice == "R") {
    if (!emb) throw DomainError("no subring declared; R is unavailable");
    return Where::R(*emb);
  }
  throw DomainError("ambient must be R or S, got '" + choice + "'");
}

Gens Session::ideal(const std::string& ref, Where where) const {
  if (auto it = ideals.find(ref); it != ideals.end()) return it->second;
  if (auto it = polys.find(ref); it != polys.end()) return {it->second};
  if (ref == "mS") return maximal_s(ring);
  if (ref == "m") {
    if (!where.in_r()) return maximal_s(ring);
    Gens g;
    for (std::size_t i = 0; i < where.emb->semigroup().generators().size(); ++i) g.push_back(where.emb->generator(i));
    return g;
  }
  Gens g;
  for (const auto& part : split_top_level(ref, ',')) g.push_back(parse_poly(part, ring));
  return g;
}

Polynomial Session::poly(const std::string& ref) const {
  if (auto it = polys.find(ref); it != polys.end()) return it->second;
  if (auto it = ideals.find(ref); it != ideals.end()) {
    if (it->second.size() != 1) throw DomainError("'" + ref + "' is an ideal with several generators, not a polynomial");
    return it->second.front();
  }
  return parse_poly(ref, ring);
}

Session parse_session(std::istream& in, const std::string& source) {
  Session s;
  s.source = source;
  std::optional<std::uint32_t> prime;
  std::size_t subring_line = 0;
  std::vector<std::string> subring_words;

  std::string raw;
  for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
    auto fail = [&](const std::string& what) { throw SessionError(source, lineno, what); };
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    try {
      if (kw == "prime") {
        if (prime) fail("prime declared twice");
        auto p = parse_uint(rest, "prime");
        if (p > 0xffffffffu || !modp::is_prime(static_cast<std::uint32_t>(p))) fail(rest + " is not prime");
        prime = static_cast<std::uint32_t>(p);
      } else if (kw == "ring") {
        if (!prime) fail("'ring' before 'prime'");
        if (s.ring) fail("ring declared twice");
        std::istringstream vs(rest);
        std::vector<std::string> vars;
        for (std::string v; vs >> v;) vars.push_back(v);
        if (vars.empty()) fail("ring needs at least one variable");
        s.ring = make_ring(*prime, vars);
      } else if (kw == "subring") {
        if (!s.ring) fail("'subring' before 'ring'");
        if (subring_line) fail("subring declared twice");
        subring_line = lineno;
        std::istringstream ws(rest);
        for (std::string w; ws >> w;) subring_words.push_back(w);
        if (subring_words.empty()) fail("subring needs at least one generator");
        for (const auto& w : subring_words) s.subring.push_back(parse_subring_word(w, s.ring));
      } else if (kw == "poly" || kw == "ideal") {
        if (!s.ring) fail("'" + kw + "' before 'ring'");
        auto eq = rest.find('=');
        if (eq == std::string::npos) fail("expected '" + kw + " NAME = EXPR'");
        std::string name = trim(rest.substr(0, eq)), expr = trim(rest.substr(eq + 1));
        if (!valid_identifier(name)) fail("invalid name '" + name + "'");
        if (s.polys.count(name) || s.ideals.count(name)) fail("name '" + name + "' already defined");
        if (name == "m" || name == "mS") fail("'" + name + "' is reserved");
        if (s.ring->index_of(name)) fail("'" + name + "' is a ring variable");
        if (expr.empty()) fail("empty expression");
        if (kw == "poly") {
          s.polys.emplace(name, parse_poly(expr, s.ring));
        } else {
          Gens g;
          for (const auto& part : split_top_level(expr, ',')) {
            if (part.empty()) fail("empty generator in ideal '" + name + "'");
            g.push_back(parse_poly(part, s.ring));
          }
          s.ideals.emplace(name, std::move(g));
        }
      } else if (kw == "set") {
        std::istringstream ks(rest);
        std::string key, value, extra;
        if (!(ks >> key >> value) || (ks >> extra)) fail("expected 'set KEY VALUE'");
        if (key == "e_max") {
          auto v = parse_uint(value, key);
          if (v == 0 || v > 12) fail("e_max must be in 1..12");
          s.config.e_max = static_cast<unsigned>(v);
        } else if (key == "box") {
          auto v = parse_uint(value, key);
          if (v == 0 || v > 4096) fail("box must be in 1..4096");
          s.config.box = static_cast<std::int64_t>(v);
        } else if (key == "m_floor") {
          s.config.m_floor = static_cast<std::uint32_t>(std::min<std::uint64_t>(parse_uint(value, key), 0xffffffffu));
        } else if (key == "max_basis") {
          s.config.max_basis = parse_uint(value, key);
        } else if (key == "max_degree") {
          s.config.max_degree = parse_uint(value, key);
        } else {
          fail("unknown setting '" + key + "' (e_max, box, m_floor, max_basis, max_degree)");
        }
      } else {
        fail("unknown keyword '" + kw + "'");
      }
    } catch (const SessionError&) {
      throw;
    } catch (const ParseError& e) {
      throw SessionError(source, lineno, e.message() + " (column " + std::to_string(e.offset() + 1) + ")");
    } catch (const Error& e) {
      throw SessionError(source, lineno, e.what());
    }
  }
  if (!prime) throw SessionError(source, 0, "missing 'prime'");
  if (!s.ring) throw SessionError(source, 0, "missing 'ring'");

  if (subring_line) {
    try {
      std::int64_t box = s.config.box ? s.config.box
                                      : default_box(s.subring, prime_power(*prime, s.config.e_max));
      s.emb = std::make_shared<SplitEmbedding>(build_embedding(s.subring, s.ring, box));
    } catch (const PurityRejected& e) {
      throw SessionError(source, subring_line, e.what());
    } catch (const Error& e) {
      throw SessionError(source, subring_line, e.what());
    }
  }
  return s;
}

Session load_session(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SessionError(path, 0, "cannot open session file");
  return parse_session(in, path);
}

}  // namespace fsing
