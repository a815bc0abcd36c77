#ifndef MULBOUND_BIGINT_UTIL_HPP
#define MULBOUND_BIGINT_UTIL_HPP

#include <cmath>
#include <stdexcept>

#include "mulbound/field.hpp"

namespace mulbound {

/// Exact binomial coefficient; 0 for k < 0 or n < k.
inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long j = 1; j <= k; ++j) {
    r *= (n - k + j);
    r /= j;  // exact at every step
  }
  return r;
}

inline long long isqrt_floor(long long n) {
  if (n < 0) throw std::invalid_argument("isqrt_floor: negative");
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline long long isqrt_ceil(long long n) {
  const long long f = isqrt_floor(n);
  return f * f == n ? f : f + 1;
}

/// Natural log of a positive big integer, exact exponent arithmetic plus a
/// 63-bit mantissa; good to ~1e-18 relative error in long double.
inline long double ln_bigint(const BigInt& n) {
  if (n <= 0) throw std::domain_error("ln_bigint: nonpositive");
  const unsigned msb = boost::multiprecision::msb(n);
  if (msb < 63) return std::log(static_cast<long double>(n.convert_to<unsigned long long>()));
  const unsigned shift = msb - 62;
  const BigInt top = n >> shift;
  const long double mant = static_cast<long double>(top.convert_to<unsigned long long>());
  return std::log(mant) + static_cast<long double>(shift) * 0.693147180559945309417232121458176568L;
}

}  // namespace mulbound

#endif
