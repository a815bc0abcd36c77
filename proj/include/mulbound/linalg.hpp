#ifndef MULBOUND_LINALG_HPP
#define MULBOUND_LINALG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mulbound/field.hpp"

namespace mulbound {

template <class F>
using Matrix = std::vector<std::vector<typename F::Elem>>;

template <class F>
inline Matrix<F> identity_matrix(const F& f, int n) {
  Matrix<F> m(n, std::vector<typename F::Elem>(n, f.zero()));
  for (int k = 0; k < n; ++k) m[k][k] = f.one();
  return m;
}

template <class F>
inline Matrix<F> mat_mul(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b[0].size());
  const int k = static_cast<int>(b.size());
  Matrix<F> r(n, std::vector<typename F::Elem>(m, f.zero()));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (f.is_zero(a[i][t])) continue;
      for (int j = 0; j < m; ++j)
        r[i][j] = f.add(r[i][j], f.mul(a[i][t], b[t][j]));
    }
  return r;
}

/// Rank by plain Gaussian elimination on a working copy.
template <class F>
inline int matrix_rank(const F& f, Matrix<F> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (!f.is_zero(m[r][c])) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const auto inv = f.inv(m[rank][c]);
    for (int j = c; j < cols; ++j) m[rank][j] = f.mul(m[rank][j], inv);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || f.is_zero(m[r][c])) continue;
      const auto factor = m[r][c];
      for (int j = c; j < cols; ++j)
        m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

template <class F>
inline bool is_invertible(const F& f, const Matrix<F>& m) {
  if (m.empty() || m.size() != m[0].size()) return false;
  return matrix_rank(f, m) == static_cast<int>(m.size());
}

/// Solve sum_a lambda_a * rows[a] = target for lambda. The rows must be
/// linearly independent; throws if the system is inconsistent.
template <class F>
inline std::vector<typename F::Elem> solve_row_combination(
    const F& f, const Matrix<F>& rows, const std::vector<typename F::Elem>& target) {
  const int r = static_cast<int>(rows.size());
  const int n = static_cast<int>(target.size());
  // Augmented system A^T * lambda = target^T, eliminated column by column.
  Matrix<F> aug(n, std::vector<typename F::Elem>(r + 1, f.zero()));
  for (int j = 0; j < n; ++j) {
    for (int a = 0; a < r; ++a) aug[j][a] = rows[a][j];
    aug[j][r] = target[j];
  }
  std::vector<int> pivot_row(r, -1);
  int rank = 0;
  for (int c = 0; c < r && rank < n; ++c) {
    int pivot = -1;
    for (int j = rank; j < n; ++j) {
      if (!f.is_zero(aug[j][c])) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(aug[rank], aug[pivot]);
    const auto inv = f.inv(aug[rank][c]);
    for (int t = c; t <= r; ++t) aug[rank][t] = f.mul(aug[rank][t], inv);
    for (int j = 0; j < n; ++j) {
      if (j == rank || f.is_zero(aug[j][c])) continue;
      const auto factor = aug[j][c];
      for (int t = c; t <= r; ++t) aug[j][t] = f.sub(aug[j][t], f.mul(factor, aug[rank][t]));
    }
    pivot_row[c] = rank;
    ++rank;
  }
  std::vector<typename F::Elem> lambda(r, f.zero());
  for (int c = 0; c < r; ++c) {
    if (pivot_row[c] < 0)
      throw std::logic_error("solve_row_combination: dependent row basis");
    lambda[c] = aug[pivot_row[c]][r];
  }
  // Consistency: rows below the pivots must have zero right-hand side.
  for (int j = 0; j < n; ++j) {
    bool all_zero = true;
    for (int c = 0; c < r; ++c)
      if (!f.is_zero(aug[j][c])) {
        all_zero = false;
        break;
      }
    if (all_zero && !f.is_zero(aug[j][r]))
      throw std::logic_error("solve_row_combination: inconsistent system");
  }
  return lambda;
}

// --- deterministic randomness helpers -------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(splitmix64(seed + 0x1000193ull * (stream + 1)));
}

/// Uniform draw from [0, n) with rejection; stable across platforms.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Uniform draw from {-3,...,3} \ {0}.
inline long long small_nonzero(std::mt19937_64& rng) {
  static const long long table[6] = {-3, -2, -1, 1, 2, 3};
  return table[uniform_below(rng, 6)];
}

/// Random invertible matrix built as P * L * D * U with unit-triangular L, U
/// carrying small random entries and a nonzero small diagonal D. Invertible by
/// construction for every draw.
template <class F>
inline Matrix<F> random_invertible(const F& f, int n, std::mt19937_64& rng) {
  Matrix<F> l = identity_matrix(f, n);
  Matrix<F> u = identity_matrix(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      l[i][j] = f.from_long(uniform_int(rng, -3, 3));
      u[j][i] = f.from_long(uniform_int(rng, -3, 3));
    }
  Matrix<F> d = identity_matrix(f, n);
  for (int i = 0; i < n; ++i) d[i][i] = f.from_long(small_nonzero(rng));
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[uniform_below(rng, static_cast<std::uint64_t>(i + 1))]);
  Matrix<F> p(n, std::vector<typename F::Elem>(n, f.zero()));
  for (int i = 0; i < n; ++i) p[i][perm[i]] = f.one();
  return mat_mul(f, mat_mul(f, p, mat_mul(f, l, d)), u);
}

}  // namespace mulbound

#endif
