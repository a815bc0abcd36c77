#ifndef MULBOUND_ORACLE_HPP
#define MULBOUND_ORACLE_HPP

#include <cassert>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mulbound/rank.hpp"
#include "mulbound/system.hpp"

namespace mulbound {

enum class MultKind { Finite, NoStabilization, IncorrectCodimension };

inline const char* to_string(MultKind k) {
  switch (k) {
    case MultKind::Finite: return "Finite";
    case MultKind::NoStabilization: return "NoStabilization";
    case MultKind::IncorrectCodimension: return "IncorrectCodimension";
  }
  return "?";
}

/// Outcome of a local multiplicity computation. `trace` holds the truncated
/// quotient dimensions d_1, d_2, ... up to the last degree evaluated.
struct MultResult {
  MultKind kind = MultKind::NoStabilization;
  long long value = 0;             // multiplicity when kind == Finite
  int truncation_degree_used = 0;  // largest K evaluated
  int trials = 0;
  int stabilized_trials = 0;
  std::vector<long long> trace;
  std::vector<MultKind> trial_kinds;  // outcome per slicing trial
};

inline int default_kmax(int d) { return 2 + 4 * d; }

// --- presolve: exact elimination of the smooth linear sheet -----------------
//
// For a square system, row-reduce so that r = rk(df_*(o)) equations acquire
// the shape z_c + l(w) + (higher order); solve those for the pivot variables
// as truncated power series in the remaining variables and substitute into
// the other equations. This is an isomorphism of the local ring compatible
// with the degree filtration, so every d_K is preserved exactly while the
// Macaulay step runs on M - r variables instead of M.

template <class F>
struct PresolvedSystem {
  F field;
  int M = 0;
  std::vector<int> pivot_cols;             // eliminated variables
  std::vector<Polynomial<F>> pivot_rows;   // z_c + linear(core) + higher
  std::vector<Polynomial<F>> residual;     // zero linear part, all vars
  std::vector<int> core_vars;              // kept variables, ascending
};

template <class F>
inline PresolvedSystem<F> presolve_linear(const PolySystem<F>& s) {
  const F& f = s.field();
  const int i = s.size();
  const int M = s.num_vars();
  std::vector<Polynomial<F>> work(s.polys().begin(), s.polys().end());
  std::vector<bool> used(i, false);
  PresolvedSystem<F> out{f, M, {}, {}, {}, {}};

  std::vector<int> pivot_row_index;
  for (int c = 0; c < M; ++c) {
    int pivot = -1;
    for (int j = 0; j < i; ++j) {
      if (!used[j] && !f.is_zero(work[j].linear_coeff(c))) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) continue;
    used[pivot] = true;
    work[pivot] = work[pivot].scaled(f.inv(work[pivot].linear_coeff(c)));
    for (int j = 0; j < i; ++j) {
      if (j == pivot) continue;
      const auto ck = work[j].linear_coeff(c);
      if (f.is_zero(ck)) continue;
      work[j] = work[j] - work[pivot].scaled(ck);
    }
    out.pivot_cols.push_back(c);
    pivot_row_index.push_back(pivot);
  }

  // Collect only after the sweep: later columns keep updating earlier pivot
  // rows, so the final linear part of pivot j is exactly z_{c_j} + (core vars).
  for (int j : pivot_row_index) out.pivot_rows.push_back(work[j]);
  std::vector<bool> is_pivot_col(M, false);
  for (int c : out.pivot_cols) is_pivot_col[c] = true;
  for (int c = 0; c < M; ++c)
    if (!is_pivot_col[c]) out.core_vars.push_back(c);
  for (int j = 0; j < i; ++j)
    if (!used[j]) out.residual.push_back(work[j]);
  return out;
}

/// Core equations at truncation degree K: pivot variables replaced by their
/// power-series solutions (exact modulo degree > K), variables renumbered to
/// the core set. Every returned polynomial has min_degree >= 2 or is zero.
template <class F>
inline std::vector<Polynomial<F>> presolved_core_at(const PresolvedSystem<F>& p, int K) {
  const F& f = p.field;
  const int M = p.M;
  const int r = static_cast<int>(p.pivot_cols.size());

  // Split each pivot row z_c + l(w) + q(z) and iterate
  // s <- -l(w) - q(z)|_{z_piv := s}; each pass gains one degree of accuracy.
  std::vector<Polynomial<F>> lin, high;
  for (int j = 0; j < r; ++j) {
    Polynomial<F> l(f, M);
    Polynomial<F> q(f, M);
    for (const auto& [e, c] : p.pivot_rows[j].terms()) {
      const int deg = total_degree(e);
      if (deg >= 2) {
        q.add_term(e, c);
      } else if (deg == 1) {
        ExpVec pivot_mon(M, 0);
        pivot_mon[p.pivot_cols[j]] = 1;
        if (e != pivot_mon) l.add_term(e, c);
      }
    }
    lin.push_back(std::move(l));
    high.push_back(std::move(q));
  }

  std::vector<Polynomial<F>> series;
  for (int j = 0; j < r; ++j) series.push_back(lin[j].negated());
  for (int pass = 0; pass <= K + 1; ++pass) {
    std::vector<std::optional<Polynomial<F>>> repl(M);
    for (int j = 0; j < r; ++j) repl[p.pivot_cols[j]] = series[j];
    std::map<ExpVec, Polynomial<F>, GrlexLess> cache;
    bool changed = false;
    std::vector<Polynomial<F>> next;
    next.reserve(r);
    for (int j = 0; j < r; ++j) {
      Polynomial<F> s = lin[j].negated() - high[j].substituted(repl, K, &cache);
      if (s != series[j]) changed = true;
      next.push_back(std::move(s));
    }
    series = std::move(next);
    if (!changed) break;
    if (pass == K + 1)
      throw std::logic_error("presolve: series substitution did not stabilize");
  }

  std::vector<std::optional<Polynomial<F>>> repl(M);
  for (int j = 0; j < r; ++j) repl[p.pivot_cols[j]] = series[j];
  std::vector<int> new_index(M, -1);
  for (std::size_t k = 0; k < p.core_vars.size(); ++k)
    new_index[p.core_vars[k]] = static_cast<int>(k);

  std::map<ExpVec, Polynomial<F>, GrlexLess> cache;
  std::vector<Polynomial<F>> core;
  core.reserve(p.residual.size());
  for (const auto& g : p.residual) {
    Polynomial<F> sub = g.substituted(repl, K, &cache);
    assert(sub.is_zero() || sub.min_degree() >= 2);
    core.push_back(sub.remapped(new_index, static_cast<int>(p.core_vars.size())));
  }
  return core;
}

/// dim F[w]/(I + m^{K+1}): columns are the monomials of degree <= K, rows the
/// degree-<= K truncations of all monomial multiples of the generators.
template <class F>
inline long long truncated_colength(const F& f, const std::vector<Polynomial<F>>& gens,
                                    int nvars, int K) {
  MonomialIndexer idx(nvars, K);
  RankEngine<F> engine(f, idx.size());
  ExpVec shifted(nvars);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const int md = g.min_degree();
    if (md > K) continue;  // no multiple fits below the truncation degree
    for (const auto& beta : monomials_up_to(nvars, K - md)) {
      typename RankEngine<F>::Row row;
      for (const auto& [e, c] : g.terms()) {
        int deg = 0;
        for (int k = 0; k < nvars; ++k) {
          shifted[k] = e[k] + beta[k];
          deg += shifted[k];
        }
        if (deg > K) break;  // terms are grlex-ascending
        row.emplace_back(idx.index(shifted), c);
      }
      if (!row.empty()) engine.add_row(std::move(row));
    }
  }
  return static_cast<long long>(idx.size()) - engine.rank();
}

/// Local multiplicity of a square system (i = M) at the origin, computed by
/// stabilizing the truncated quotient dimensions d_K. Once the increment
/// d_{K+1} - d_K hits zero it stays zero, so the first repeat is final.
template <class F>
inline MultResult local_colength(const PolySystem<F>& s, int K_max) {
  if (s.size() != s.num_vars())
    throw std::invalid_argument("local_colength: need i = M");
  if (K_max < 2) throw std::invalid_argument("local_colength: K_max must be at least 2");

  MultResult res;
  res.trials = 1;
  const PresolvedSystem<F> pre = presolve_linear(s);
  const int core_vars = static_cast<int>(pre.core_vars.size());

  if (core_vars == 0) {
    // Every variable eliminated along the smooth sheet: simple point.
    res.kind = MultKind::Finite;
    res.value = 1;
    res.truncation_degree_used = 1;
    res.stabilized_trials = 1;
    res.trace = {1};
    return res;
  }

  for (int K = 1; K <= K_max; ++K) {
    const auto core = presolved_core_at(pre, K);
    const long long d = truncated_colength(s.field(), core, core_vars, K);
    assert(res.trace.empty() || d >= res.trace.back());
    res.trace.push_back(d);
    res.truncation_degree_used = K;
    if (res.trace.size() >= 2 && d == res.trace[res.trace.size() - 2]) {
      res.kind = MultKind::Finite;
      res.value = d;
      res.stabilized_trials = 1;
      return res;
    }
  }
  res.kind = MultKind::NoStabilization;
  res.stabilized_trials = 0;
  return res;
}

/// Multiplicity of the intersection cycle for i <= M: append M - i generic
/// linear slices through the origin and take the minimum stabilized colength
/// over independent seeded trials (degenerate slices only overestimate or
/// fail to stabilize).
template <class F>
inline MultResult cycle_multiplicity(const PolySystem<F>& s, int trials, std::uint64_t seed,
                                     int K_max, int jobs = 1) {
  if (trials < 1) throw std::invalid_argument("cycle_multiplicity: trials must be >= 1");
  if (K_max == 0) K_max = default_kmax(s.degree_cap());
  if (s.size() == s.num_vars()) return local_colength(s, K_max);

  const F& f = s.field();
  const int M = s.num_vars();
  const int extra = M - s.size();

  auto run_trial = [&](int t) -> MultResult {
    auto rng = make_rng(seed, 0x51c3ull + static_cast<std::uint64_t>(t));
    std::vector<Polynomial<F>> polys(s.polys().begin(), s.polys().end());
    for (int j = 0; j < extra; ++j) {
      Polynomial<F> form(f, M);
      while (form.is_zero()) {
        for (int k = 0; k < M; ++k) {
          const long long c = uniform_int(rng, -7, 7);
          if (c == 0) continue;
          ExpVec e(M, 0);
          e[k] = 1;
          form.add_term(e, f.from_long(c));
        }
      }
      polys.push_back(std::move(form));
    }
    return local_colength(PolySystem<F>(f, M, s.degree_cap(), std::move(polys)), K_max);
  };

  std::vector<MultResult> outcomes(trials);
  if (jobs > 1) {
    std::vector<std::future<MultResult>> futs;
    futs.reserve(trials);
    for (int t = 0; t < trials; ++t)
      futs.push_back(std::async(std::launch::async, run_trial, t));
    for (int t = 0; t < trials; ++t) outcomes[t] = futs[t].get();
  } else {
    for (int t = 0; t < trials; ++t) outcomes[t] = run_trial(t);
  }

  MultResult res;
  res.trials = trials;
  int best = -1;
  for (int t = 0; t < trials; ++t) {
    res.trial_kinds.push_back(outcomes[t].kind);
    if (outcomes[t].kind != MultKind::Finite) continue;
    ++res.stabilized_trials;
    if (best < 0 || outcomes[t].value < outcomes[best].value) best = t;
  }
  if (best >= 0) {
    res.kind = MultKind::Finite;
    res.value = outcomes[best].value;
    res.truncation_degree_used = outcomes[best].truncation_degree_used;
    res.trace = outcomes[best].trace;
  } else {
    // Either the zero set through o has dimension > M - i, or K_max was too
    // small; the caller decides based on the recorded trials.
    res.kind = MultKind::IncorrectCodimension;
    res.truncation_degree_used = K_max;
    res.trace = outcomes[0].trace;
  }
  return res;
}

/// Membership test for "multiplicity >= m"; an incorrect-codimension verdict
/// counts as infinite multiplicity.
template <class F>
inline bool is_mult_at_least(const PolySystem<F>& s, long long m, int trials,
                             std::uint64_t seed, int K_max) {
  const MultResult r = cycle_multiplicity(s, trials, seed, K_max);
  if (r.kind == MultKind::Finite) return r.value >= m;
  return true;
}

}  // namespace mulbound

#endif
