#ifndef MULBOUND_RANK_HPP
#define MULBOUND_RANK_HPP

#include <utility>
#include <vector>

#include "mulbound/field.hpp"

namespace mulbound {

// Sparse row: (column, coefficient) pairs sorted by ascending column index.
// The leading entry is the one with the largest column index.

/// Incremental rank computation over a prime field: each incoming row is
/// reduced against the stored pivot rows (normalized to leading coefficient 1)
/// and installed as a new pivot if anything survives.
class PrimeRowEliminator {
 public:
  using Row = std::vector<std::pair<int, std::uint64_t>>;

  PrimeRowEliminator(const PrimeField& f, int ncols)
      : f_(f), reducers_(static_cast<std::size_t>(ncols)) {}

  void add_row(Row row) {
    while (!row.empty()) {
      const int lead = row.back().first;
      const Row& red = reducers_[lead];
      if (red.empty()) {
        const auto inv = f_.inv(row.back().second);
        for (auto& [c, v] : row) v = f_.mul(v, inv);
        reducers_[lead] = std::move(row);
        ++rank_;
        return;
      }
      row = axpy(row, red, f_.neg(row.back().second));
    }
  }

  int rank() const { return rank_; }

 private:
  // row + c * red, merged by column.
  Row axpy(const Row& row, const Row& red, std::uint64_t c) const {
    Row out;
    out.reserve(row.size() + red.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < red.size()) {
      if (j == red.size() || (i < row.size() && row[i].first < red[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || red[j].first < row[i].first) {
        const auto v = f_.mul(c, red[j].second);
        if (v != 0) out.emplace_back(red[j].first, v);
        ++j;
      } else {
        const auto v = f_.add(row[i].second, f_.mul(c, red[j].second));
        if (v != 0) out.emplace_back(row[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }

  PrimeField f_;
  std::vector<Row> reducers_;
  int rank_ = 0;
};

/// Fraction-free rank computation over the rationals: rows are cleared to
/// integers, eliminated by cross-multiplication, and stripped of their content
/// after every step, so no rational division ever happens.
class RationalRowEliminator {
 public:
  using Row = std::vector<std::pair<int, BigRational>>;
  using IntRow = std::vector<std::pair<int, BigInt>>;

  RationalRowEliminator(const RationalField&, int ncols)
      : reducers_(static_cast<std::size_t>(ncols)) {}

  void add_row(const Row& row) { add_int_row(clear_denominators(row)); }

  int rank() const { return rank_; }

 private:
  static IntRow clear_denominators(const Row& row) {
    BigInt lcm = 1;
    for (const auto& [c, v] : row) {
      const BigInt den = boost::multiprecision::denominator(v);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    IntRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) {
      BigInt num = boost::multiprecision::numerator(v) *
                   (lcm / boost::multiprecision::denominator(v));
      if (num != 0) out.emplace_back(c, std::move(num));
    }
    return out;
  }

  static void strip_content(IntRow& row) {
    if (row.empty()) return;
    BigInt g = 0;
    for (const auto& [c, v] : row) {
      g = boost::multiprecision::gcd(g, v);
      if (g == 1) break;
    }
    if (row.back().second < 0) g = -g;  // positive leading coefficient
    if (g != 1)
      for (auto& [c, v] : row) v /= g;
  }

  void add_int_row(IntRow row) {
    strip_content(row);
    while (!row.empty()) {
      const int lead = row.back().first;
      const IntRow& red = reducers_[lead];
      if (red.empty()) {
        reducers_[lead] = std::move(row);
        ++rank_;
        return;
      }
      const BigInt a = row.back().second;   // leading coefficient of row
      const BigInt b = red.back().second;   // leading coefficient of reducer
      const BigInt g = boost::multiprecision::gcd(a, b);
      row = combine(row, b / g, red, -(a / g));
      strip_content(row);
    }
  }

  // m1 * row + m2 * red, merged by column.
  static IntRow combine(const IntRow& row, const BigInt& m1, const IntRow& red,
                        const BigInt& m2) {
    IntRow out;
    out.reserve(row.size() + red.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < red.size()) {
      if (j == red.size() || (i < row.size() && row[i].first < red[j].first)) {
        out.emplace_back(row[i].first, row[i].second * m1);
        ++i;
      } else if (i == row.size() || red[j].first < row[i].first) {
        out.emplace_back(red[j].first, red[j].second * m2);
        ++j;
      } else {
        BigInt v = row[i].second * m1 + red[j].second * m2;
        if (v != 0) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<IntRow> reducers_;
  int rank_ = 0;
};

template <class F>
struct RankEngineFor;

template <>
struct RankEngineFor<PrimeField> {
  using type = PrimeRowEliminator;
};

template <>
struct RankEngineFor<RationalField> {
  using type = RationalRowEliminator;
};

template <class F>
using RankEngine = typename RankEngineFor<F>::type;

}  // namespace mulbound

#endif
