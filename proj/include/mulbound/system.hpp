#ifndef MULBOUND_SYSTEM_HPP
#define MULBOUND_SYSTEM_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mulbound/linalg.hpp"
#include "mulbound/polynomial.hpp"

namespace mulbound {

/// Ordered tuple (f_1,...,f_i) of polynomials of degree <= d with no free
/// term in M variables, 1 <= i <= M.
template <class F>
class PolySystem {
 public:
  PolySystem(const F& field, int M, int d, std::vector<Polynomial<F>> polys)
      : field_(field), M_(M), d_(d), polys_(std::move(polys)) {
    if (M < 1) throw std::invalid_argument("PolySystem: M must be positive");
    if (d < 2) throw std::invalid_argument("PolySystem: d must be at least 2");
    const int i = static_cast<int>(polys_.size());
    if (i < 1 || i > M) throw std::invalid_argument("PolySystem: need 1 <= i <= M");
    for (const auto& p : polys_) {
      if (p.num_vars() != M) throw std::invalid_argument("PolySystem: variable count mismatch");
      if (p.degree() > d) throw std::invalid_argument("PolySystem: degree exceeds d");
      if (!field_.is_zero(p.constant_term()))
        throw std::invalid_argument("PolySystem: nonzero free term");
    }
  }

  const F& field() const { return field_; }
  int num_vars() const { return M_; }
  int degree_cap() const { return d_; }
  int size() const { return static_cast<int>(polys_.size()); }
  const std::vector<Polynomial<F>>& polys() const { return polys_; }
  const Polynomial<F>& poly(int j) const { return polys_.at(j); }

  bool operator==(const PolySystem& o) const {
    return M_ == o.M_ && d_ == o.d_ && polys_ == o.polys_;
  }

 private:
  F field_;
  int M_;
  int d_;
  std::vector<Polynomial<F>> polys_;
};

/// Matrix of differentials at the origin: row j holds the degree-1
/// coefficients of f_j.
template <class F>
inline Matrix<F> linear_part(const PolySystem<F>& s) {
  Matrix<F> m(s.size(), std::vector<typename F::Elem>(s.num_vars(), s.field().zero()));
  for (int j = 0; j < s.size(); ++j)
    for (int k = 0; k < s.num_vars(); ++k) m[j][k] = s.poly(j).linear_coeff(k);
  return m;
}

/// epsilon = i - rk(df_1(o),...,df_i(o)).
template <class F>
inline int epsilon(const PolySystem<F>& s) {
  return s.size() - matrix_rank(s.field(), linear_part(s));
}

template <class F>
struct ReducedForm {
  PolySystem<F> system;
  std::vector<int> permutation;  // permutation[j] = original index of row j
  int b = 0;
};

/// Reduce to standard form: reorder so the lexicographically first maximal
/// independent set of differentials comes first, then clear the differentials
/// of the remaining rows by subtracting the unique linear combination of the
/// leading rows.
template <class F>
inline ReducedForm<F> reduce_standard_form_full(const PolySystem<F>& s) {
  const F& f = s.field();
  const int i = s.size();
  const int M = s.num_vars();
  const Matrix<F> lp = linear_part(s);

  // Greedy scan = lexicographically first independent row subset.
  std::vector<int> independent;
  Matrix<F> basis;  // reduced copies of the chosen rows
  for (int j = 0; j < i; ++j) {
    std::vector<typename F::Elem> row = lp[j];
    for (const auto& b : basis) {
      int lead = -1;
      for (int k = 0; k < M; ++k)
        if (!f.is_zero(b[k])) {
          lead = k;
          break;
        }
      if (lead < 0 || f.is_zero(row[lead])) continue;
      const auto factor = f.div(row[lead], b[lead]);
      for (int k = 0; k < M; ++k) row[k] = f.sub(row[k], f.mul(factor, b[k]));
    }
    bool nonzero = false;
    for (int k = 0; k < M; ++k)
      if (!f.is_zero(row[k])) {
        nonzero = true;
        break;
      }
    if (nonzero) {
      independent.push_back(j);
      basis.push_back(std::move(row));
    }
  }

  const int rank = static_cast<int>(independent.size());
  const int b = i - rank;
  std::vector<int> perm = independent;
  std::vector<bool> chosen(i, false);
  for (int j : independent) chosen[j] = true;

  std::vector<Polynomial<F>> out;
  out.reserve(i);
  Matrix<F> ind_rows;
  for (int j : independent) {
    out.push_back(s.poly(j));
    ind_rows.push_back(lp[j]);
  }
  for (int j = 0; j < i; ++j) {
    if (chosen[j]) continue;
    perm.push_back(j);
    const auto lambda = solve_row_combination(f, ind_rows, lp[j]);
    Polynomial<F> plus = s.poly(j);
    for (int a = 0; a < rank; ++a)
      plus = plus - s.poly(independent[a]).scaled(lambda[a]);
    out.push_back(std::move(plus));
  }
  return ReducedForm<F>{PolySystem<F>(f, M, s.degree_cap(), std::move(out)), std::move(perm), b};
}

template <class F>
inline PolySystem<F> reduce_standard_form(const PolySystem<F>& s) {
  return reduce_standard_form_full(s).system;
}

// --- constructions ---------------------------------------------------------

/// M quadrics cutting the rational normal curve t -> (t, t^2, ..., t^M) and
/// one coordinate function vanishing on it to order a+1.
template <class F>
inline PolySystem<F> tangency_system(const F& f, int M, int a) {
  if (M < 2 || a < 1 || a > M - 1)
    throw std::invalid_argument("tangency_system: need 1 <= a <= M-1");
  std::vector<Polynomial<F>> polys;
  // z_2 - z_1^2
  {
    Polynomial<F> p(f, M);
    ExpVec e(M, 0);
    e[1] = 1;
    p.add_term(e, f.one());
    e[1] = 0;
    e[0] = 2;
    p.add_term(e, f.neg(f.one()));
    polys.push_back(std::move(p));
  }
  // z_{j+1} - z_1 z_j, j = 2..M-1
  for (int j = 2; j <= M - 1; ++j) {
    Polynomial<F> p(f, M);
    ExpVec e(M, 0);
    e[j] = 1;
    p.add_term(e, f.one());
    e[j] = 0;
    e[0] = 1;
    e[j - 1] += 1;
    p.add_term(e, f.neg(f.one()));
    polys.push_back(std::move(p));
  }
  // z_{a+1}
  polys.push_back(Polynomial<F>::variable(f, M, a));
  return PolySystem<F>(f, M, 2, std::move(polys));
}

/// (z_1^2,...,z_m^2, z_{m+1},...,z_{m^2}) in M = m^2 variables.
template <class F>
inline PolySystem<F> square_block_system(const F& f, int m) {
  if (m < 1) throw std::invalid_argument("square_block_system: need m >= 1");
  const int M = m * m;
  std::vector<Polynomial<F>> polys;
  for (int k = 0; k < m; ++k) {
    ExpVec e(M, 0);
    e[k] = 2;
    polys.push_back(Polynomial<F>::monomial(f, M, e, f.one()));
  }
  for (int k = m; k < M; ++k) polys.push_back(Polynomial<F>::variable(f, M, k));
  return PolySystem<F>(f, M, 2, std::move(polys));
}

/// (z_1^d, ..., z_M^d).
template <class F>
inline PolySystem<F> power_system(const F& f, int M, int d) {
  if (M < 1 || d < 2) throw std::invalid_argument("power_system: need M >= 1, d >= 2");
  std::vector<Polynomial<F>> polys;
  for (int k = 0; k < M; ++k) {
    ExpVec e(M, 0);
    e[k] = d;
    polys.push_back(Polynomial<F>::monomial(f, M, e, f.one()));
  }
  return PolySystem<F>(f, M, d, std::move(polys));
}

/// Seeded random system in the epsilon = b stratum: the first i-b polynomials
/// carry dense random linear + higher terms, the last b have zero linear part.
/// Coefficients are drawn from {-3,...,3} \ {0}; rank failures (measure zero)
/// are resampled with an incremented seed, at most 16 times.
template <class F>
inline PolySystem<F> sample_stratum(const F& f, int i, int M, int d, int b, std::uint64_t seed) {
  if (M < 1 || i < 1 || i > M || b < 0 || b > i || d < 2)
    throw std::invalid_argument("sample_stratum: need 0 <= b <= i <= M, d >= 2");
  const auto degree_block = monomials_up_to(M, d);
  for (int attempt = 0; attempt < 16; ++attempt) {
    auto rng = make_rng(seed + static_cast<std::uint64_t>(attempt), 0x5a6d);
    std::vector<Polynomial<F>> polys;
    for (int j = 0; j < i; ++j) {
      const int min_deg = (j < i - b) ? 1 : 2;
      Polynomial<F> p(f, M);
      for (const auto& e : degree_block) {
        const int deg = total_degree(e);
        if (deg < min_deg || deg > d) continue;
        p.add_term(e, f.from_long(small_nonzero(rng)));
      }
      polys.push_back(std::move(p));
    }
    PolySystem<F> s(f, M, d, std::move(polys));
    if (epsilon(s) == b) return s;
  }
  throw std::runtime_error("sample_stratum: rank post-check failed 16 times");
}

// --- group actions ----------------------------------------------------------

/// Variable substitution z -> g z.
template <class F>
inline PolySystem<F> transform_coords(const PolySystem<F>& s, const Matrix<F>& g) {
  const F& f = s.field();
  const int M = s.num_vars();
  if (static_cast<int>(g.size()) != M || static_cast<int>(g[0].size()) != M)
    throw std::invalid_argument("transform_coords: matrix must be MxM");
  if (!is_invertible(f, g)) throw std::invalid_argument("transform_coords: singular matrix");
  std::vector<std::optional<Polynomial<F>>> repl(M);
  for (int k = 0; k < M; ++k) {
    Polynomial<F> lin(f, M);
    ExpVec e(M, 0);
    for (int l = 0; l < M; ++l) {
      if (f.is_zero(g[k][l])) continue;
      e[l] = 1;
      lin.add_term(e, g[k][l]);
      e[l] = 0;
    }
    repl[k] = std::move(lin);
  }
  std::vector<Polynomial<F>> polys;
  std::map<ExpVec, Polynomial<F>, GrlexLess> cache;
  for (int j = 0; j < s.size(); ++j)
    polys.push_back(s.poly(j).substituted(repl, s.degree_cap(), &cache));
  return PolySystem<F>(f, M, s.degree_cap(), std::move(polys));
}

/// Tuple action (f_1,...,f_i) -> (f_1,...,f_i) h.
template <class F>
inline PolySystem<F> transform_rows(const PolySystem<F>& s, const Matrix<F>& h) {
  const F& f = s.field();
  const int i = s.size();
  if (static_cast<int>(h.size()) != i || static_cast<int>(h[0].size()) != i)
    throw std::invalid_argument("transform_rows: matrix must be ixi");
  if (!is_invertible(f, h)) throw std::invalid_argument("transform_rows: singular matrix");
  std::vector<Polynomial<F>> polys;
  for (int j = 0; j < i; ++j) {
    Polynomial<F> p(f, s.num_vars());
    for (int k = 0; k < i; ++k) {
      if (f.is_zero(h[k][j])) continue;
      p = p + s.poly(k).scaled(h[k][j]);
    }
    polys.push_back(std::move(p));
  }
  return PolySystem<F>(f, s.num_vars(), s.degree_cap(), std::move(polys));
}

/// View the same tuple inside a larger coordinate space (appended variables).
template <class F>
inline PolySystem<F> embed(const PolySystem<F>& s, int new_M) {
  if (new_M < s.num_vars()) throw std::invalid_argument("embed: cannot shrink");
  std::vector<Polynomial<F>> polys;
  for (int j = 0; j < s.size(); ++j) polys.push_back(s.poly(j).extended(new_M));
  return PolySystem<F>(s.field(), new_M, s.degree_cap(), std::move(polys));
}

template <class F>
inline int degree(const Polynomial<F>& p) {
  return p.degree();
}

}  // namespace mulbound

#endif
