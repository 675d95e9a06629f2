#include "cusp/linalg.hpp"

#include <algorithm>

namespace cusp {

namespace {

template <class T>
int eliminate(Matrix<T>& m, std::vector<std::size_t>* pivot_cols = nullptr) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const T inv = T(1) / m[r][c];
    for (auto& v : m[r]) v = v * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const T f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace

int rank(Matrix<GaussianRational> m) { return eliminate(m); }
int rank(Matrix<KElem> m) { return eliminate(m); }

std::optional<std::vector<KElem>> kernel_vector(Matrix<KElem> m) {
  if (m.empty()) return std::nullopt;
  const std::size_t cols = m[0].size();
  std::vector<std::size_t> pivots;
  eliminate(m, &pivots);
  std::size_t free = cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
      free = c;
      break;
    }
  }
  if (free == cols) return std::nullopt;
  std::vector<KElem> v(cols, KElem(0));
  v[free] = KElem(1);
  for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
  return v;
}

Matrix<GaussianRational> transpose(const Matrix<GaussianRational>& m) {
  if (m.empty()) return m;
  Matrix<GaussianRational> t(m[0].size(), std::vector<GaussianRational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

std::optional<std::vector<GaussianRational>> solve(Matrix<GaussianRational> a, std::vector<GaussianRational> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  if (eliminate(a) < static_cast<int>(n)) return std::nullopt;
  std::vector<GaussianRational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::vector<Integer> smith_diagonal(Matrix<Integer> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Move the smallest nonzero entry of the trailing block to (t, t).
    bool found = true;
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) {
        found = false;
        break;
      }
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Integer q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Integer q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any row whose entries the pivot does not divide.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (!found) break;
    diag.push_back(abs(m[t][t]));
  }
  while (diag.size() < std::min(rows, cols)) diag.emplace_back(0);
  return diag;
}

}  // namespace cusp
