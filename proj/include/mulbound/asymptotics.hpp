#ifndef MULBOUND_ASYMPTOTICS_HPP
#define MULBOUND_ASYMPTOTICS_HPP

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mulbound/bounds.hpp"

namespace mulbound {

/// f(s) = 2s ln s - (s - 1/s) ln(s^2 - 1) for s > 1. Near 1 the second factor
/// vanishes, so the value is continued by 2s ln s (f(1+) = 0).
inline long double omega_objective(long double s) {
  if (s <= 1.0L) throw std::domain_error("omega_objective: need s > 1");
  if (s - 1.0L <= 1e-8L) return 2.0L * s * std::log(s);
  return 2.0L * s * std::log(s) - (s - 1.0L / s) * std::log(s * s - 1.0L);
}

/// f'(s) = 2 ln s - (1 + 1/s^2) ln(s^2 - 1).
inline long double omega_derivative(long double s) {
  if (s <= 1.0L) throw std::domain_error("omega_derivative: need s > 1");
  if (s - 1.0L <= 1e-8L) return 1e30L;  // f climbs steeply off the boundary
  return 2.0L * std::log(s) - (1.0L + 1.0L / (s * s)) * std::log(s * s - 1.0L);
}

struct OmegaResult {
  long double omega = 0;
  long double argmax_s = 0;
  long double bracket_lo = 0;
  long double bracket_hi = 0;
  int iterations = 0;
  long double optimizer_gap = 0;  // |golden-section - derivative-bisection|
};

/// Maximize the objective on [1, 100]: dense grid scan, golden-section
/// refinement to width `tol`, cross-validated against bisection of the
/// derivative. Throws if the two optimizers disagree by more than 10*tol.
inline OmegaResult compute_omega_impl(long double tol, int grid_points) {
  if (tol <= 0) throw std::invalid_argument("compute_omega: tol must be positive");
  const long double lo = 1.0L + 1e-6L;
  const long double hi = 100.0L;

  // grid scan
  int best = 0;
  long double best_val = -1e30L;
  const long double step = (hi - lo) / (grid_points - 1);
  for (int k = 0; k < grid_points; ++k) {
    const long double s = lo + step * k;
    const long double v = omega_objective(s);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  long double a = lo + step * (best > 0 ? best - 1 : 0);
  long double b = lo + step * (best + 1 < grid_points ? best + 1 : grid_points - 1);

  // golden-section refinement
  const long double gr = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double c = b - gr * (b - a);
  long double d = a + gr * (b - a);
  long double fc = omega_objective(c);
  long double fd = omega_objective(d);
  int iters = 0;
  while (b - a > tol && iters < 400) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = omega_objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = omega_objective(d);
    }
    ++iters;
  }
  const long double s_golden = (a + b) / 2;
  const long double omega_golden = omega_objective(s_golden);

  // independent check: bisect f' on a bracket around the grid peak
  long double ba = std::max(lo, lo + step * (best - 1));
  long double bb = lo + step * (best + 1 < grid_points ? best + 1 : grid_points - 1);
  while (omega_derivative(ba) <= 0) ba = std::max(lo, ba - step);
  while (omega_derivative(bb) >= 0) bb = bb + step;
  int bisect_iters = 0;
  while (bb - ba > tol && bisect_iters < 400) {
    const long double mid = (ba + bb) / 2;
    if (omega_derivative(mid) > 0)
      ba = mid;
    else
      bb = mid;
    ++bisect_iters;
  }
  const long double s_bisect = (ba + bb) / 2;
  const long double omega_bisect = omega_objective(s_bisect);

  const long double gap = std::fabs(omega_golden - omega_bisect);
  if (gap > 10.0L * tol)
    throw std::runtime_error("compute_omega: optimizers disagree beyond tolerance");

  OmegaResult r;
  if (omega_golden >= omega_bisect) {
    r.omega = omega_golden;
    r.argmax_s = s_golden;
  } else {
    r.omega = omega_bisect;
    r.argmax_s = s_bisect;
  }
  r.bracket_lo = a;
  r.bracket_hi = b;
  r.iterations = iters + bisect_iters;
  r.optimizer_gap = gap;
  return r;
}

inline OmegaResult compute_omega(long double tol) { return compute_omega_impl(tol, 200001); }

/// omega at tol 1e-12, computed once per process.
inline const OmegaResult& cached_omega() {
  static const OmegaResult r = compute_omega(1e-12L);
  return r;
}

/// ln(sqrt(M) * e^{omega sqrt(M)}) = omega*sqrt(M) + (1/2) ln M, in log space
/// to avoid overflow at large M.
inline long double asymptotic_bound_log(long long M) {
  if (M < 1) throw std::invalid_argument("asymptotic_bound_log: need M >= 1");
  const long double sm = std::sqrt(static_cast<long double>(M));
  return cached_omega().omega * sm + 0.5L * std::log(static_cast<long double>(M));
}

struct CrossoverRow {
  long long M = 0;
  long double ln_xi = 0;
  long double envelope = 0;
  long double slack = 0;  // envelope - ln_xi
};

struct CrossoverReport {
  long long M_lo = 0, M_hi = 0;
  std::vector<CrossoverRow> rows;
  std::vector<long long> violations;  // M where the envelope fails
  bool threshold_exists = false;
  long long threshold_M0 = 0;  // smallest M0 with the envelope holding on [M0, M_hi]
};

/// Compare ln(xi_upper(M)) against the asymptotic envelope across a range.
/// Report-only: the envelope is only claimed for sufficiently high M.
inline CrossoverReport crossover_scan(long long M_lo, long long M_hi, int jobs = 1) {
  if (M_lo < 1 || M_hi < M_lo) throw std::invalid_argument("crossover_scan: bad range");
  CrossoverReport rep;
  rep.M_lo = M_lo;
  rep.M_hi = M_hi;
  rep.rows.resize(static_cast<std::size_t>(M_hi - M_lo + 1));

  auto fill = [&](long long lo, long long hi) {
    for (long long M = lo; M < hi; ++M) {
      CrossoverRow row;
      row.M = M;
      row.ln_xi = ln_bigint(xi_upper(static_cast<int>(M)));
      row.envelope = asymptotic_bound_log(M);
      row.slack = row.envelope - row.ln_xi;
      rep.rows[static_cast<std::size_t>(M - M_lo)] = row;
    }
  };
  if (jobs <= 1) {
    fill(M_lo, M_hi + 1);
  } else {
    std::vector<std::thread> workers;
    const long long n = M_hi - M_lo + 1;
    const long long chunk = (n + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      const long long lo = M_lo + t * chunk;
      const long long hi = std::min(M_hi + 1, lo + chunk);
      if (lo < hi) workers.emplace_back(fill, lo, hi);
    }
    for (auto& w : workers) w.join();
  }

  for (const auto& row : rep.rows)
    if (row.slack < 0) rep.violations.push_back(row.M);
  if (rep.violations.empty()) {
    rep.threshold_exists = true;
    rep.threshold_M0 = M_lo;
  } else if (rep.violations.back() < M_hi) {
    rep.threshold_exists = true;
    rep.threshold_M0 = rep.violations.back() + 1;
  }
  return rep;
}

inline std::string format_ld(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15Le", v);
  return buf;
}

inline std::string crossover_csv(const CrossoverReport& rep) {
  std::ostringstream os;
  os << "M,ln_xi_upper,envelope_log,slack\n";
  for (const auto& r : rep.rows)
    os << r.M << ',' << format_ld(r.ln_xi) << ',' << format_ld(r.envelope) << ','
       << format_ld(r.slack) << '\n';
  os << "# violations=" << rep.violations.size();
  if (rep.threshold_exists)
    os << " M0=" << rep.threshold_M0;
  else
    os << " M0=none";
  os << '\n';
  return os.str();
}

}  // namespace mulbound

#endif
