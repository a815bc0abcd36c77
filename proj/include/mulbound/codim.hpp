#ifndef MULBOUND_CODIM_HPP
#define MULBOUND_CODIM_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mulbound {

/// gamma(b) = b^2(1-d) + b(dM - M - d) + dM + 1; equals ((b+1)d - b)(M-b) + 1.
inline long long gamma_quadratic(long long b, long long d, long long M) {
  return b * b * (1 - d) + b * (d * M - M - d) + d * M + 1;
}

/// Codimension bound for tuples of homogeneous systems with a solution set of
/// incorrect dimension: min over b in {0,...,i-1} of ((b+1)d - b)(M-b) + 1.
/// Enumerated directly rather than via endpoint analysis.
inline long long prop31_bound(long long i, long long M, long long d) {
  if (i < 1 || i > M) throw std::invalid_argument("prop31_bound: need 1 <= i <= M");
  if (d < 2) throw std::invalid_argument("prop31_bound: need d >= 2");
  long long best = gamma_quadratic(0, d, M);
  for (long long b = 1; b <= i - 1; ++b)
    best = std::min(best, gamma_quadratic(b, d, M));
  return best;
}

/// Affine version: dM for i <= M-1 and (d-1)M + 1 for i = M. One less than the
/// homogeneous bound, accounting for the incidence-fibre slice.
inline long long prop11_bound(long long i, long long M, long long d) {
  if (i < 1 || i > M) throw std::invalid_argument("prop11_bound: need 1 <= i <= M");
  if (d < 2) throw std::invalid_argument("prop11_bound: need d >= 2");
  const long long v = (i <= M - 1) ? d * M : (d - 1) * M + 1;
  if (v != prop31_bound(i, M, d) - 1)
    throw std::logic_error("prop11_bound: fibre identity violated");
  return v;
}

/// Codimension of the tuples vanishing on some line through the origin:
/// dM conditions per fixed line minus the (M-1)-dimensional family of lines.
/// Witnesses sharpness of the affine bound at i = M.
inline long long line_stratum_codim(long long M, long long d) {
  if (M < 1) throw std::invalid_argument("line_stratum_codim: need M >= 1");
  if (d < 2) throw std::invalid_argument("line_stratum_codim: need d >= 2");
  const long long v = d * M - (M - 1);
  if (v != prop11_bound(M, M, d))
    throw std::logic_error("line_stratum_codim: sharpness identity violated");
  return v;
}

struct CodimRow {
  long long i, M, d, prop31, prop11, line_codim;
};

inline std::vector<CodimRow> codim_table(long long M_lo, long long M_hi, long long d_lo,
                                         long long d_hi) {
  std::vector<CodimRow> rows;
  for (long long M = std::max(1ll, M_lo); M <= M_hi; ++M)
    for (long long d = std::max(2ll, d_lo); d <= d_hi; ++d)
      for (long long i = 1; i <= M; ++i)
        rows.push_back(CodimRow{i, M, d, prop31_bound(i, M, d), prop11_bound(i, M, d),
                                line_stratum_codim(M, d)});
  return rows;
}

inline std::string codim_csv(const std::vector<CodimRow>& rows) {
  std::ostringstream os;
  os << "i,M,d,prop31,prop11,line_codim\n";
  for (const auto& r : rows)
    os << r.i << ',' << r.M << ',' << r.d << ',' << r.prop31 << ',' << r.prop11 << ','
       << r.line_codim << '\n';
  return os.str();
}

}  // namespace mulbound

#endif
