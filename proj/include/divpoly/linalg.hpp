// Exact Gaussian elimination over the rationals.
#pragma once

#include "divpoly/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace divpoly {

using Matrix = std::vector<Vec>;  // row major

struct Echelon {
  Matrix rows;                      // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row
};

inline Echelon rref(Matrix m, std::size_t ncols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j) {
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

inline std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return rref(m, m.front().size()).rows.size();
}

inline std::size_t rank(const Matrix& m, std::size_t ncols) {
  if (m.empty()) return 0;
  return rref(m, ncols).rows.size();
}

inline Rat det(Matrix m) {
  const std::size_t n = m.size();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

/// Solves sum_j x_j * cols[j] == b; returns one solution or nullopt.
inline std::optional<Vec> solve_columns(const Matrix& cols, const Vec& b) {
  const std::size_t n = b.size();
  const std::size_t k = cols.size();
  Matrix aug(n, Vec(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = cols[j][i];
    aug[i][k] = b[i];
  }
  Echelon e = rref(aug, k + 1);
  Vec x(k);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == k) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][k];
  }
  return x;
}

/// Basis of {x : m x = 0}.
inline Matrix nullspace(const Matrix& m, std::size_t ncols) {
  Echelon e = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(ncols);
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// gcd of all maximal minors of a k x n integer matrix ; 1 for k == 0, 0 when k > n.
inline BigInt maximal_minor_gcd(const Matrix& rows) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  const std::size_t n = rows.front().size();
  if (k > n) return 0;
  BigInt g = 0;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Matrix sub(k, Vec(k));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) sub[r][c] = rows[r][idx[c]];
    }
    Rat d = det(sub);
    g = gcd(g, d.num());
    // next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return g;
}

}  // namespace divpoly
