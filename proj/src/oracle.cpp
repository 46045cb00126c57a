#include "fsing/oracle.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsing/cartier.hpp"
#include "fsing/error.hpp"
#include "fsing/modp.hpp"

namespace fsing::oracle {

namespace {

constexpr std::uint64_t kMaxCells = 5'000'000;

// Dense coefficient array over a box of exponents.
struct Dense {
  std::vector<std::uint64_t> dims;
  std::vector<std::uint32_t> data;

  std::uint64_t index(const std::vector<std::uint64_t>& m) const {
    std::uint64_t k = 0;
    for (std::size_t i = dims.size(); i-- > 0;) k = k * dims[i] + m[i];
    return k;
  }
  std::vector<std::uint64_t> exps(std::uint64_t k) const {
    std::vector<std::uint64_t> m(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
      m[i] = k % dims[i];
      k /= dims[i];
    }
    return m;
  }
};

std::uint64_t cells(const std::vector<std::uint64_t>& dims) {
  std::uint64_t c = 1;
  for (auto d : dims) {
    c *= d;
    if (c > kMaxCells) throw ResourceBound("dense oracle degree cap exceeded");
  }
  return c;
}

Dense to_dense(const Polynomial& f) {
  Dense d;
  d.dims.assign(f.ring()->n(), 1);
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < d.dims.size(); ++i) d.dims[i] = std::max<std::uint64_t>(d.dims[i], t.mono[i] + 1);
  d.data.assign(cells(d.dims), 0);
  for (const auto& t : f.terms()) {
    std::vector<std::uint64_t> m(t.mono.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = t.mono[i];
    d.data[d.index(m)] = t.coeff;
  }
  return d;
}

}  // namespace

std::uint64_t nu_dense(const Polynomial& f, const std::vector<Polynomial>& a, unsigned e) {
  const Ring& ring = f.ring();
  const std::uint32_t p = ring->p();
  const std::uint64_t q = prime_power(p, e);
  const std::size_t n = ring->n();
  std::vector<std::vector<std::uint64_t>> walls;  // exponents of the generators of a^[q]
  for (const auto& g : a) {
    if (!g.is_monomial()) throw DomainError("dense ν oracle needs a monomial ideal");
    std::vector<std::uint64_t> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = g.terms()[0].mono[i] * q;
    walls.push_back(w);
  }
  auto killed = [&](const std::vector<std::uint64_t>& m) {
    return std::any_of(walls.begin(), walls.end(), [&](const std::vector<std::uint64_t>& w) {
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] < w[i]) return false;
      return true;
    });
  };
  if (killed(std::vector<std::uint64_t>(n, 0))) throw DomainError("a is the unit ideal");

  Dense fd = to_dense(f);
  std::vector<std::pair<std::vector<std::uint64_t>, std::uint32_t>> fterms;
  for (std::uint64_t k = 0; k < fd.data.size(); ++k)
    if (fd.data[k]) fterms.push_back({fd.exps(k), fd.data[k]});

  Dense cur;
  cur.dims.assign(n, 1);
  cur.data = {1};
  for (std::uint64_t t = 1; t <= 1'000'000; ++t) {
    Dense next;
    next.dims.resize(n);
    for (std::size_t i = 0; i < n; ++i) next.dims[i] = cur.dims[i] + fd.dims[i] - 1;
    next.data.assign(cells(next.dims), 0);
    for (std::uint64_t k = 0; k < cur.data.size(); ++k) {
      if (!cur.data[k]) continue;
      auto m = cur.exps(k);
      for (const auto& [fm, c] : fterms) {
        std::vector<std::uint64_t> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = m[i] + fm[i];
        auto& cell = next.data[next.index(s)];
        cell = modp::add(cell, modp::mul(cur.data[k], c, p), p);
      }
    }
    // Drop what lies in a^[q], then shrink the box to the surviving support.
    std::vector<std::uint64_t> top(n, 0);
    bool any = false;
    for (std::uint64_t k = 0; k < next.data.size(); ++k) {
      if (!next.data[k]) continue;
      auto m = next.exps(k);
      if (killed(m)) {
        next.data[k] = 0;
        continue;
      }
      any = true;
      for (std::size_t i = 0; i < n; ++i) top[i] = std::max(top[i], m[i]);
    }
    if (!any) return t - 1;
    Dense shrunk;
    shrunk.dims.resize(n);
    for (std::size_t i = 0; i < n; ++i) shrunk.dims[i] = top[i] + 1;
    shrunk.data.assign(cells(shrunk.dims), 0);
    for (std::uint64_t k = 0; k < next.data.size(); ++k)
      if (next.data[k]) shrunk.data[shrunk.index(next.exps(k))] = next.data[k];
    cur = std::move(shrunk);
  }
  throw ResourceBound("dense ν oracle did not terminate; is f in the radical of a?");
}

Ideal eth_root_dense(const Ideal& I, unsigned e) {
  const Ring& ring = I.ring();
  const std::size_t n = ring->n();
  const std::uint64_t q = prime_power(ring->p(), e);
  std::vector<std::uint64_t> box(n, q);
  const std::uint64_t shifts = cells(box);
  std::vector<Polynomial> out;
  for (const auto& g : I.gens()) {
    Dense d = to_dense(g);
    Dense b;
    b.dims = box;
    for (std::uint64_t s = 0; s < shifts; ++s) {
      auto shift = b.exps(s);
      std::vector<Polynomial::Term> terms;
      for (std::uint64_t k = 0; k < d.data.size(); ++k) {
        if (!d.data[k]) continue;
        auto m = d.exps(k);
        Monomial target(n);
        bool hit = true;
        for (std::size_t i = 0; i < n && hit; ++i) {
          std::uint64_t x = m[i] + shift[i];
          hit = x % q == q - 1;
          target[i] = static_cast<std::uint32_t>(x / q);
        }
        if (hit) terms.push_back({target, d.data[k]});
      }
      Polynomial img = Polynomial::from_terms(ring, std::move(terms));
      if (!img.is_zero()) out.push_back(std::move(img));
    }
  }
  return Ideal(ring, std::move(out));
}

// ---------------------------------------------------------------- Cartier pieces

namespace {

using Row = std::map<std::size_t, std::uint32_t>;

// Incremental row echelon form over F_p; each stored row's smallest column is
// its pivot and carries coefficient 1.
class Echelon {
public:
  explicit Echelon(std::uint32_t p) : p_(p) {}

  void add(Row row) {
    for (auto it = row.begin(); it != row.end();) {
      auto piv = rows_.find(it->first);
      if (piv == rows_.end()) {
        ++it;
        continue;
      }
      const std::size_t col = it->first;
      const std::uint32_t c = it->second;
      for (const auto& [j, v] : piv->second) {
        auto& x = row[j];
        x = modp::sub(x, modp::mul(c, v, p_), p_);
      }
      for (auto jt = row.begin(); jt != row.end();) jt = jt->second == 0 ? row.erase(jt) : std::next(jt);
      it = row.upper_bound(col);
    }
    if (row.empty()) return;
    std::uint32_t inv = modp::inv(row.begin()->second, p_);
    for (auto& [j, v] : row) v = modp::mul(v, inv, p_);
    rows_.emplace(row.begin()->first, std::move(row));
  }

  /// Basis of the null space over `cols` columns.
  std::vector<std::vector<std::uint32_t>> kernel(std::size_t cols) const {
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t f = 0; f < cols; ++f) {
      if (rows_.count(f)) continue;
      std::vector<std::uint32_t> x(cols, 0);
      x[f] = 1;
      for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
        std::uint32_t s = 0;
        for (const auto& [j, v] : it->second)
          if (j != it->first) s = modp::add(s, modp::mul(v, x[j], p_), p_);
        x[it->first] = modp::neg(s, p_);
      }
      out.push_back(std::move(x));
    }
    return out;
  }

private:
  std::uint32_t p_;
  std::map<std::size_t, Row> rows_;
};

// Reduced row echelon basis of the span of vectors (all of one length).
std::vector<std::vector<std::uint32_t>> rref(std::vector<std::vector<std::uint32_t>> v, std::uint32_t p) {
  if (v.empty()) return v;
  const std::size_t cols = v[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < v.size(); ++c) {
    std::size_t piv = r;
    while (piv < v.size() && v[piv][c] == 0) ++piv;
    if (piv == v.size()) continue;
    std::swap(v[r], v[piv]);
    std::uint32_t inv = modp::inv(v[r][c], p);
    for (auto& x : v[r]) x = modp::mul(x, inv, p);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i == r || v[i][c] == 0) continue;
      std::uint32_t k = v[i][c];
      for (std::size_t j = 0; j < cols; ++j) v[i][j] = modp::sub(v[i][j], modp::mul(k, v[r][j], p), p);
    }
    ++r;
  }
  v.resize(r);
  return v;
}

struct Projected {
  std::vector<IntVec> inner;  // inner nodes, sorted
  std::vector<std::vector<std::uint32_t>> basis;
};

Projected solve_piece(const SplitEmbedding& emb, std::int64_t q, const IntVec& w, std::int64_t box,
                      std::int64_t outer) {
  const std::size_t n = emb.ring()->n();
  const std::uint32_t p = emb.ring()->p();
  const auto& gens = emb.semigroup().generators();
  const std::int64_t side = outer + 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(side);
    if (total > kMaxCells * 4) throw ResourceBound("Cartier piece box too large");
  }
  auto encode = [&](const IntVec& v) {
    std::uint64_t k = 0;
    for (std::size_t i = n; i-- > 0;) k = k * side + static_cast<std::uint64_t>(v[i]);
    return k;
  };
  auto inside = [&](const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [&](std::int64_t x) { return x >= 0 && x <= outer; });
  };
  // Σ ∩ box as nonnegative combinations of the generators.
  std::vector<char> sigma(total, 0);
  std::vector<IntVec> stack{IntVec(n, 0)};
  sigma[0] = 1;
  while (!stack.empty()) {
    IntVec v = std::move(stack.back());
    stack.pop_back();
    for (const auto& g : gens) {
      IntVec u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = v[i] + g[i];
      if (!inside(u) || sigma[encode(u)]) continue;
      sigma[encode(u)] = 1;
      stack.push_back(std::move(u));
    }
  }

  std::vector<IntVec> nodes;
  std::map<IntVec, std::size_t> index;
  for (std::uint64_t k = 0; k < total; ++k) {
    if (!sigma[k]) continue;
    IntVec m(n);
    std::uint64_t r = k;
    bool congruent = true;
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = static_cast<std::int64_t>(r % side);
      r /= side;
      std::int64_t s = (m[i] + w[i]) % q;
      congruent = congruent && s == 0;
    }
    if (!congruent) continue;
    index.emplace(m, nodes.size());
    nodes.push_back(m);
  }

  Echelon ech(p);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const IntVec& m = nodes[k];
    IntVec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = (m[i] + w[i]) / q;
    bool live = std::all_of(t.begin(), t.end(), [](std::int64_t x) { return x >= 0; });
    if (live) {
      if (!inside(t)) throw ResourceBound("Cartier piece target outside the box");
      live = sigma[encode(t)];
    }
    if (!live) ech.add(Row{{k, 1}});
    for (const auto& g : gens) {
      IntVec u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = m[i] + q * g[i];
      auto it = index.find(u);
      if (it != index.end()) ech.add(Row{{k, p - 1}, {it->second, 1}});
    }
  }

  Projected out;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (std::all_of(nodes[k].begin(), nodes[k].end(), [&](std::int64_t x) { return x <= box; })) {
      keep.push_back(k);
      out.inner.push_back(nodes[k]);
    }
  std::vector<std::vector<std::uint32_t>> proj;
  for (auto& v : ech.kernel(nodes.size())) {
    std::vector<std::uint32_t> r(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) r[j] = v[keep[j]];
    proj.push_back(std::move(r));
  }
  out.basis = rref(std::move(proj), p);
  return out;
}

}  // namespace

PieceSolution cartier_piece_solver(const SplitEmbedding& emb, unsigned e, const IntVec& w, std::int64_t box) {
  if (w.size() != emb.ring()->n()) throw DomainError("shift length does not match the ring");
  if (box <= 0) throw DomainError("box must be positive");
  const auto q = static_cast<std::int64_t>(prime_power(emb.ring()->p(), e));
  Projected small = solve_piece(emb, q, w, box, 2 * box);
  Projected large = solve_piece(emb, q, w, box, 4 * box);
  if (small.basis != large.basis) throw ResourceBound("Cartier piece not stable under box growth");
  PieceSolution s;
  s.box = box;
  s.dimension = large.basis.size();
  for (const auto& v : large.basis) {
    std::map<IntVec, std::uint32_t> vec;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j]) vec.emplace(large.inner[j], v[j]);
    s.basis.push_back(std::move(vec));
  }
  return s;
}

namespace {

std::string show(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

PieceComparison compare_pieces(const SplitEmbedding& emb, unsigned e, std::int64_t box, std::int64_t lo,
                               std::int64_t hi) {
  const std::size_t n = emb.ring()->n();
  const auto q = static_cast<std::int64_t>(prime_power(emb.ring()->p(), e));
  std::vector<IntVec> nodes;
  IntVec m(n, 0);
  for (;;) {
    if (emb.contains_exponent(m)) nodes.push_back(m);
    std::size_t i = 0;
    while (i < n && ++m[i] > box) m[i++] = 0;
    if (i == n) break;
  }

  PieceComparison out;
  auto fail = [&](const IntVec& w, const std::string& what) {
    ++out.mismatches;
    if (out.notes.size() < 20) out.notes.push_back("w=" + show(w) + ": " + what);
  };
  IntVec w(n, lo);
  for (;;) {
    ++out.shifts;
    auto sol = cartier_piece_solver(emb, e, w, box);
    auto map = graded_map(emb, e, w);
    if (sol.dimension) ++out.pieces;
    if (sol.dimension != (map ? 1u : 0u)) {
      fail(w, "solver dimension " + std::to_string(sol.dimension) + ", main " + (map ? "1" : "0"));
    } else if (map) {
      const auto& basis = sol.basis[0];
      for (const auto& node : nodes) {
        Monomial mm(n);
        for (std::size_t i = 0; i < n; ++i) mm[i] = static_cast<std::uint32_t>(node[i]);
        auto image = map->act(mm);
        auto it = basis.find(node);
        std::uint32_t c = it == basis.end() ? 0 : it->second;
        if (!image) {
          if (c) fail(w, "main kills " + show(node));
          continue;
        }
        if (c != 1) {
          fail(w, "solver scalar " + std::to_string(c) + " at " + show(node));
          continue;
        }
        for (std::size_t i = 0; i < n; ++i)
          if (static_cast<std::int64_t>((*image)[i]) * q != node[i] + w[i]) {
            fail(w, "wrong target of " + show(node));
            break;
          }
      }
    }
    std::size_t i = 0;
    while (i < n && ++w[i] > hi) w[i++] = lo;
    if (i == n) break;
  }
  return out;
}

// ---------------------------------------------------------------- transport

namespace {

using boost::multiprecision::cpp_rational;

}  // namespace

TransportIso::TransportIso(const SplitEmbedding& emb)
    : source_(emb.ring()), gens_(emb.semigroup().generators()) {
  const std::size_t r = gens_.size(), n = source_->n();
  // Gauss-Jordan on the transpose picks r independent coordinates.
  std::vector<std::vector<cpp_rational>> M(n, std::vector<cpp_rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) M[j][i] = gens_[i][j];
  std::vector<std::size_t> rows;
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t best = n;
    for (std::size_t k = 0; k < n && best == n; ++k)
      if (M[k][col] != 0 && std::find(rows.begin(), rows.end(), k) == rows.end()) best = k;
    if (best == n) throw DomainError("generators are linearly dependent; transport needs a zero toric ideal");
    rows.push_back(best);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == best || M[k][col] == 0) continue;
      cpp_rational f = M[k][col] / M[best][col];
      for (std::size_t c = 0; c < r; ++c) M[k][c] -= f * M[best][c];
    }
  }
  pivots_ = rows;
  // Inverse of the r x r block B[k][i] = gens_[i][pivots_[k]], so that a = m_piv * B^{-1}.
  std::vector<std::vector<cpp_rational>> B(r, std::vector<cpp_rational>(2 * r));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < r; ++i) B[k][i] = gens_[i][pivots_[k]];
    B[k][r + k] = 1;
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    while (B[piv][c] == 0) ++piv;
    std::swap(B[c], B[piv]);
    cpp_rational d = B[c][c];
    for (auto& x : B[c]) x /= d;
    for (std::size_t k = 0; k < r; ++k) {
      if (k == c || B[k][c] == 0) continue;
      cpp_rational f = B[k][c];
      for (std::size_t j = 0; j < 2 * r; ++j) B[k][j] -= f * B[c][j];
    }
  }
  boost::multiprecision::cpp_int den = 1;
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& x = B[k][r + j];
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
    }
  inv_den_ = static_cast<std::int64_t>(den);
  inv_num_.assign(r, std::vector<std::int64_t>(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < r; ++j)
      inv_num_[k][j] = static_cast<std::int64_t>(boost::multiprecision::numerator(cpp_rational(B[k][r + j] * den)));

  std::vector<std::string> names;
  for (std::size_t i = 0; i < r; ++i)
    names.push_back(r <= 26 ? std::string(1, static_cast<char>('a' + i)) : "a" + std::to_string(i + 1));
  target_ = make_ring(source_->p(), names);
}

Polynomial TransportIso::forward(const Polynomial& f) const {
  if (!same_ring(f.ring(), source_)) throw RingMismatch();
  const std::size_t r = gens_.size(), n = source_->n();
  std::vector<Polynomial::Term> terms;
  for (const auto& t : f.terms()) {
    // a_j = Σ_k m[pivot_k] (B^{-1})[k][j]
    Monomial y(r);
    for (std::size_t j = 0; j < r; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < r; ++k) s += static_cast<std::int64_t>(t.mono[pivots_[k]]) * inv_num_[k][j];
      if (s % inv_den_ != 0 || s < 0) throw DomainError("monomial is not in the subring");
      y[j] = static_cast<std::uint32_t>(s / inv_den_);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < r; ++j) s += static_cast<std::int64_t>(y[j]) * gens_[j][i];
      if (s != t.mono[i]) throw DomainError("monomial is not in the subring");
    }
    terms.push_back({std::move(y), t.coeff});
  }
  return Polynomial::from_terms(target_, std::move(terms));
}

Polynomial TransportIso::backward(const Polynomial& g) const {
  if (!same_ring(g.ring(), target_)) throw RingMismatch();
  std::vector<Polynomial::Term> terms;
  for (const auto& t : g.terms()) {
    Monomial m(source_->n());
    for (std::size_t j = 0; j < gens_.size(); ++j)
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += t.mono[j] * static_cast<std::uint32_t>(gens_[j][i]);
    terms.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(source_, std::move(terms));
}

Ideal TransportIso::forward(const std::vector<Polynomial>& gens) const {
  std::vector<Polynomial> out;
  for (const auto& g : gens) out.push_back(forward(g));
  return Ideal(target_, std::move(out));
}

std::vector<Polynomial> TransportIso::backward(const Ideal& I) const {
  std::vector<Polynomial> out;
  for (const auto& g : I.gens()) out.push_back(backward(g));
  return out;
}

}  // namespace fsing::oracle
