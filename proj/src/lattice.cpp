#include "fsing/lattice.hpp"

#include <cstdlib>
#include <utility>

#include "fsing/error.hpp"

namespace fsing {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("lattice arithmetic overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("lattice arithmetic overflow");
  return r;
}

IntMat identity(std::size_t n) {
  IntMat I(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

// row_a += k * row_b
void add_row(IntMat& M, std::size_t a, std::size_t b, std::int64_t k) {
  for (std::size_t c = 0; c < M[a].size(); ++c) M[a][c] = checked_add(M[a][c], checked_mul(k, M[b][c]));
}

void add_col(IntMat& M, std::size_t a, std::size_t b, std::int64_t k) {
  for (auto& row : M) row[a] = checked_add(row[a], checked_mul(k, row[b]));
}

void swap_cols(IntMat& M, std::size_t a, std::size_t b) {
  for (auto& row : M) std::swap(row[a], row[b]);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMat& A, std::size_t cols) {
  const std::size_t rows = A.size();
  SmithForm s{identity(rows), identity(cols), A, {}};
  IntMat& D = s.D;
  for (auto& r : D)
    if (r.size() != cols) throw DomainError("ragged matrix");

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (D[i][j] != 0 && (pr == rows || std::llabs(D[i][j]) < std::llabs(D[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(D[t], D[pr]);
    std::swap(s.U[t], s.U[pr]);
    swap_cols(D, t, pc);
    swap_cols(s.W, t, pc);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      std::int64_t k = floor_div(D[i][t], D[t][t]);
      if (k) {
        add_row(D, i, t, -k);
        add_row(s.U, i, t, -k);
      }
      if (D[i][t]) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      std::int64_t k = floor_div(D[t][j], D[t][t]);
      if (k) {
        add_col(D, j, t, -k);
        add_col(s.W, j, t, -k);
      }
      if (D[t][j]) clean = false;
    }
    if (!clean) continue;
    // Divisibility: fold an offending row into the pivot row and retry.
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (D[i][j] % D[t][t] != 0) {
          add_row(D, t, i, 1);
          add_row(s.U, t, i, 1);
          divides = false;
          break;
        }
    if (!divides) continue;
    if (D[t][t] < 0) {
      for (auto& x : D[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
    s.diagonal.push_back(D[t][t]);
    ++t;
  }
  return s;
}

namespace {

// Inverse of a unimodular matrix by exact integer Gauss-Jordan.
IntMat unimodular_inverse(IntMat M) {
  const std::size_t n = M.size();
  IntMat inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    // Euclid down column c until a single unit remains at (c, c).
    for (;;) {
      std::size_t piv = n;
      for (std::size_t r = c; r < n; ++r)
        if (M[r][c] != 0 && (piv == n || std::llabs(M[r][c]) < std::llabs(M[piv][c]))) piv = r;
      if (piv == n) throw DomainError("matrix is singular");
      std::swap(M[c], M[piv]);
      std::swap(inv[c], inv[piv]);
      bool done = true;
      for (std::size_t r = c + 1; r < n; ++r) {
        std::int64_t k = floor_div(M[r][c], M[c][c]);
        if (k) {
          add_row(M, r, c, -k);
          add_row(inv, r, c, -k);
        }
        if (M[r][c]) done = false;
      }
      if (done) break;
    }
    if (M[c][c] != 1 && M[c][c] != -1) throw DomainError("matrix is not unimodular");
    if (M[c][c] == -1) {
      for (auto& x : M[c]) x = -x;
      for (auto& x : inv[c]) x = -x;
    }
  }
  for (std::size_t c = n; c-- > 0;)
    for (std::size_t r = 0; r < c; ++r)
      if (M[r][c]) {
        std::int64_t k = M[r][c];
        add_row(M, r, c, -k);
        add_row(inv, r, c, -k);
      }
  return inv;
}

}  // namespace

Lattice::Lattice(const IntMat& generators, std::size_t n) : n_(n) {
  SmithForm s = smith_normal_form(generators, n);
  W_ = std::move(s.W);
  W_inv_ = unimodular_inverse(W_);
  factors_ = std::move(s.diagonal);

  // Row echelon form of the basis, pivots positive.
  hermite_ = basis();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n_ && row < hermite_.size(); ++c) {
    for (;;) {
      std::size_t piv = hermite_.size();
      for (std::size_t r = row; r < hermite_.size(); ++r)
        if (hermite_[r][c] != 0 && (piv == hermite_.size() || std::llabs(hermite_[r][c]) < std::llabs(hermite_[piv][c])))
          piv = r;
      if (piv == hermite_.size()) break;
      std::swap(hermite_[row], hermite_[piv]);
      bool done = true;
      for (std::size_t r = row + 1; r < hermite_.size(); ++r) {
        std::int64_t k = floor_div(hermite_[r][c], hermite_[row][c]);
        if (k) add_row(hermite_, r, row, -k);
        if (hermite_[r][c]) done = false;
      }
      if (!done) continue;
      if (hermite_[row][c] < 0)
        for (auto& x : hermite_[row]) x = -x;
      ++row;
      break;
    }
  }
}

std::optional<IntVec> Lattice::coordinates(std::span<const std::int64_t> v) const {
  if (v.size() != n_) throw DomainError("vector length does not match lattice ambient dimension");
  IntVec z(factors_.size());
  for (std::size_t j = 0; j < n_; ++j) {
    std::int64_t y = 0;
    for (std::size_t i = 0; i < n_; ++i) y = checked_add(y, checked_mul(v[i], W_[i][j]));
    if (j < factors_.size()) {
      if (y % factors_[j] != 0) return std::nullopt;
      z[j] = y / factors_[j];
    } else if (y != 0) {
      return std::nullopt;
    }
  }
  return z;
}

void Lattice::for_each_in_box(const IntVec& lo, const IntVec& hi,
                              const std::function<void(const IntVec&)>& visit) const {
  const std::size_t k = hermite_.size();
  std::vector<std::size_t> pivot(k);
  for (std::size_t i = 0; i < k; ++i) {
    pivot[i] = 0;
    while (hermite_[i][pivot[i]] == 0) ++pivot[i];
  }
  auto in_range = [&](const IntVec& v, std::size_t from, std::size_t to) {
    for (std::size_t c = from; c < to; ++c)
      if (v[c] < lo[c] || v[c] > hi[c]) return false;
    return true;
  };
  IntVec v(n_, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    // Columns before this row's pivot are final.
    std::size_t from = i == 0 ? 0 : pivot[i - 1] + 1;
    std::size_t to = i == k ? n_ : pivot[i];
    if (!in_range(v, from, to)) return;
    if (i == k) {
      visit(v);
      return;
    }
    const std::int64_t h = hermite_[i][pivot[i]], s = v[pivot[i]];
    std::int64_t zlo = -floor_div(-(lo[pivot[i]] - s), h), zhi = floor_div(hi[pivot[i]] - s, h);
    for (std::int64_t z = zlo; z <= zhi; ++z) {
      for (std::size_t c = pivot[i]; c < n_; ++c) v[c] = checked_add(v[c], checked_mul(z, hermite_[i][c]));
      rec(i + 1);
      for (std::size_t c = pivot[i]; c < n_; ++c) v[c] -= z * hermite_[i][c];
    }
  };
  rec(0);
}

bool Lattice::contains(std::span<const std::int64_t> v) const {
  if (v.size() != n_) throw DomainError("vector length does not match lattice ambient dimension");
  for (std::size_t j = 0; j < n_; ++j) {
    std::int64_t y = 0;
    for (std::size_t i = 0; i < n_; ++i) y = checked_add(y, checked_mul(v[i], W_[i][j]));
    if (j < factors_.size()) {
      if (y % factors_[j] != 0) return false;
    } else if (y != 0) {
      return false;
    }
  }
  return true;
}

IntMat Lattice::basis() const {
  IntMat b;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    IntVec row(n_);
    for (std::size_t j = 0; j < n_; ++j) row[j] = checked_mul(factors_[i], W_inv_[i][j]);
    b.push_back(std::move(row));
  }
  return b;
}

}  // namespace fsing
