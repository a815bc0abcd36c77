#ifndef MULBOUND_MONOMIAL_HPP
#define MULBOUND_MONOMIAL_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mulbound {

// Dense exponent vector, one entry per variable.
using ExpVec = std::vector<int>;

inline int total_degree(const ExpVec& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Graded lexicographic order: compare total degree first, ties broken
// lexicographically on the exponent vector. Translation-invariant, so
// multiplying a sorted term list by a monomial keeps it sorted.
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

namespace detail {
inline void enumerate_degree(int nvars, int pos, int remaining, ExpVec& cur,
                             std::vector<ExpVec>& out) {
  if (pos == nvars - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate_degree(nvars, pos + 1, remaining - e, cur, out);
  }
}
}  // namespace detail

/// All monomials in `nvars` variables of total degree <= K, ascending grlex.
inline std::vector<ExpVec> monomials_up_to(int nvars, int K) {
  if (nvars < 0 || K < 0) throw std::invalid_argument("monomials_up_to: bad arguments");
  std::vector<ExpVec> out;
  if (nvars == 0) {
    out.push_back(ExpVec{});
    return out;
  }
  ExpVec cur(nvars, 0);
  for (int deg = 0; deg <= K; ++deg)
    detail::enumerate_degree(nvars, 0, deg, cur, out);
  return out;
}

/// Maps monomials of degree <= K to their rank in ascending grlex order.
class MonomialIndexer {
 public:
  MonomialIndexer(int nvars, int K) : mons_(monomials_up_to(nvars, K)) {
    for (std::size_t i = 0; i < mons_.size(); ++i) index_[mons_[i]] = static_cast<int>(i);
  }

  int size() const { return static_cast<int>(mons_.size()); }
  const ExpVec& monomial(int idx) const { return mons_[idx]; }
  int index(const ExpVec& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw std::out_of_range("MonomialIndexer: monomial out of range");
    return it->second;
  }

 private:
  std::vector<ExpVec> mons_;
  std::map<ExpVec, int, GrlexLess> index_;
};

}  // namespace mulbound

#endif
