#ifndef MULBOUND_BOUNDS_HPP
#define MULBOUND_BOUNDS_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "mulbound/bigint_util.hpp"

namespace mulbound {

/// Argument tuple of the refined multiplicity bound; delta = M + b - i is the
/// codimension cost of one inductive step.
struct BoundState {
  int i = 0, M = 0, a = 0, b = 0;
  int delta() const { return M + b - i; }
};

/// All state invariants at once: 1 <= i <= M, 0 <= b <= i, 0 <= a <= M
/// (the bounds are only claimed for codimension at most M), and the stratum
/// existence condition a >= b * (M + b - i).
inline bool feasible(long long i, long long M, long long a, long long b) {
  if (i < 1 || i > M) return false;
  if (b < 0 || b > i) return false;
  if (a < 0 || a > M) return false;
  if (b * (M + b - i) > a) return false;
  return true;
}

namespace detail {

inline std::uint64_t pack_state(int i, int M, int a, int b) {
  return (static_cast<std::uint64_t>(i) << 48) | (static_cast<std::uint64_t>(M) << 32) |
         (static_cast<std::uint64_t>(a) << 16) | static_cast<std::uint64_t>(b);
}

inline std::unordered_map<std::uint64_t, BigInt>& dp_memo() {
  static std::unordered_map<std::uint64_t, BigInt> memo;
  return memo;
}

inline std::mutex& dp_mutex() {
  static std::mutex mu;
  return mu;
}

// Recursion with the unknown branch parameter resolved adversarially:
//   U(i,M,a,b) = U(i-1,M,a-D,b-1)
//              + max{ U(i-1,M-1,a-D,b)         if a >= (b+1)D,
//                     U(i-1,M-1,a-D-(b-1),b-1) always },   D = M+b-i.
// States with b = 0 evaluate to 1.
inline BigInt bound_dp_unchecked(int i, int M, int a, int b) {
  if (b == 0) return 1;
  const std::uint64_t key = pack_state(i, M, a, b);
  {
    std::lock_guard<std::mutex> lock(dp_mutex());
    auto it = dp_memo().find(key);
    if (it != dp_memo().end()) return it->second;
  }
  const int D = M + b - i;
  assert(D >= 1);
  assert(b >= 1 && a >= b * D);

  const BigInt first = bound_dp_unchecked(i - 1, M, a - D, b - 1);
  // branch with the rank of the restricted differentials dropping (B1 child):
  // feasible whenever the parent is.
  BigInt second = bound_dp_unchecked(i - 1, M - 1, a - D - (b - 1), b - 1);
  // branch keeping the rank (B0 child): admissible iff the child state exists.
  if (feasible(i - 1, M - 1, a - D, b)) {
    BigInt alt = bound_dp_unchecked(i - 1, M - 1, a - D, b);
    if (alt > second) second = std::move(alt);
  }
  BigInt value = first + second;
  {
    std::lock_guard<std::mutex> lock(dp_mutex());
    dp_memo().emplace(key, value);
  }
  return value;
}

inline void require_feasible(int i, int M, int a, int b, const char* who) {
  if (!feasible(i, M, a, b))
    throw std::domain_error(std::string(who) + ": infeasible state (i=" + std::to_string(i) +
                            ",M=" + std::to_string(M) + ",a=" + std::to_string(a) +
                            ",b=" + std::to_string(b) + ")");
}

}  // namespace detail

/// Memoized inductive upper bound on the stratified multiplicity.
inline BigInt bound_dp(int i, int M, int a, int b) {
  detail::require_feasible(i, M, a, b, "bound_dp");
  return detail::bound_dp_unchecked(i, M, a, b);
}

/// Closed form: sum_{l=0}^{b} C(A_l, b-l) with A_l = [(a-lb)/(M+b-i-l)];
/// the l = b summand is 1 and its A_b is never evaluated.
inline BigInt bound_closed_form(int i, int M, int a, int b) {
  detail::require_feasible(i, M, a, b, "bound_closed_form");
  const long long D = M + b - i;
  BigInt sum = 0;
  for (long long l = 0; l <= b; ++l) {
    if (l == b) {
      sum += 1;
      continue;
    }
    assert(D - l >= 1);
    const long long num = static_cast<long long>(a) - l * b;
    assert(num >= 0);
    const long long A_l = num / (D - l);
    sum += binomial(A_l, b - l);
  }
  return sum;
}

namespace detail {

// The displayed closed formulas for b = 1, 2 are degree-free and make sense
// beyond the a <= M window, so only the stratum existence condition is
// enforced here.
inline void require_stratum(int i, int M, int a, int b, const char* who) {
  if (i < 1 || i > M || a < 0 || static_cast<long long>(b) * (M + b - i) > a)
    throw std::domain_error(std::string(who) + ": state violates a >= b(M+b-i)");
}

}  // namespace detail

/// b = 1 special case: [a/(M+1-i)] + 1.
inline BigInt bound_b1(int i, int M, int a) {
  detail::require_stratum(i, M, a, 1, "bound_b1");
  return BigInt(a / (M + 1 - i) + 1);
}

/// b = 2 special case: (1/2)q(q+1) + 2 with q = [a/(M+2-i)].
inline BigInt bound_b2(int i, int M, int a) {
  detail::require_stratum(i, M, a, 2, "bound_b2");
  const long long q = a / (M + 2 - i);
  return BigInt(q * (q + 1) / 2 + 2);
}

/// Diagonal (i = M) refinement of the b = 2 case: (1/2)[a/2]([a/2]+1) + delta
/// with delta = 1 for even a and 2 for odd a.
inline BigInt bound_b2_diag(int a) {
  if (a < 4) throw std::domain_error("bound_b2_diag: need a >= 4");
  const long long q = a / 2;
  return BigInt(q * (q + 1) / 2 + (a % 2 == 0 ? 1 : 2));
}

/// Bound over all strata: max over feasible b of min(DP, closed form).
inline BigInt mu_upper(int i, int M, int a) {
  if (i < 1 || i > M) throw std::domain_error("mu_upper: need 1 <= i <= M");
  if (a < 0 || a > M)
    throw std::domain_error("mu_upper: codimension a must satisfy 0 <= a <= M "
                            "(the bounds are only valid up to a = M)");
  BigInt best = 0;
  for (int b = 0; b <= i; ++b) {
    if (!feasible(i, M, a, b)) continue;
    BigInt v = std::min(bound_dp(i, M, a, b), bound_closed_form(i, M, a, b));
    if (v > best) best = std::move(v);
  }
  return best;
}

/// xi(M): the bound at full codimension a = M of a square system.
inline BigInt xi_upper(int M) { return mu_upper(M, M, M); }

/// The coarse square-root envelope shape: ceil(sqrt(M)) times the largest
/// binomial C([(M-lb)/(b-l)], b-l) over b in [1, sqrt(M)] and l < b. The
/// prefactor is rounded up to keep the value an integer upper envelope.
inline BigInt xi_envelope_form(int M) {
  if (M < 1) throw std::domain_error("xi_envelope_form: need M >= 1");
  const long long root = isqrt_floor(M);
  BigInt best = 1;
  for (long long b = 1; b <= root; ++b)
    for (long long l = 0; l < b; ++l) {
      BigInt c = binomial((M - l * b) / (b - l), b - l);
      if (c > best) best = std::move(c);
    }
  return BigInt(isqrt_ceil(M)) * best;
}

// --- table emission ----------------------------------------------------------

struct BoundRow {
  int i, M, a, b, delta;
  BigInt dp, closed, min_bound;
};

/// Every feasible state with i, M, a in the given inclusive ranges, ordered by
/// (M, i, a, b).
inline std::vector<BoundRow> bound_table(int i_lo, int i_hi, int M_lo, int M_hi, int a_lo,
                                         int a_hi, int jobs = 1) {
  std::vector<BoundState> states;
  for (int M = std::max(1, M_lo); M <= M_hi; ++M)
    for (int i = std::max(1, i_lo); i <= std::min(i_hi, M); ++i)
      for (int a = std::max(0, a_lo); a <= std::min(a_hi, M); ++a)
        for (int b = 0; b <= i; ++b)
          if (feasible(i, M, a, b)) states.push_back(BoundState{i, M, a, b});

  std::vector<BoundRow> rows(states.size());
  auto fill = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const BoundState& s = states[k];
      BigInt dp = bound_dp(s.i, s.M, s.a, s.b);
      BigInt cf = bound_closed_form(s.i, s.M, s.a, s.b);
      BigInt mn = std::min(dp, cf);
      rows[k] = BoundRow{s.i, s.M, s.a, s.b, s.delta(), std::move(dp), std::move(cf),
                         std::move(mn)};
    }
  };
  if (jobs <= 1 || states.size() < 64) {
    fill(0, states.size());
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (states.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      const std::size_t lo = std::min(states.size(), static_cast<std::size_t>(t) * chunk);
      const std::size_t hi = std::min(states.size(), lo + chunk);
      if (lo < hi) workers.emplace_back(fill, lo, hi);
    }
    for (auto& w : workers) w.join();
  }
  return rows;
}

inline std::string bounds_csv(const std::vector<BoundRow>& rows) {
  std::ostringstream os;
  os << "i,M,a,b,delta,bound_dp,bound_closed_form,min_bound\n";
  for (const auto& r : rows)
    os << r.i << ',' << r.M << ',' << r.a << ',' << r.b << ',' << r.delta << ','
       << r.dp.str() << ',' << r.closed.str() << ',' << r.min_bound.str() << '\n';
  return os.str();
}

}  // namespace mulbound

#endif
