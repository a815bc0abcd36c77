#ifndef MULBOUND_POLYNOMIAL_HPP
#define MULBOUND_POLYNOMIAL_HPP

#include <cassert>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mulbound/field.hpp"
#include "mulbound/monomial.hpp"

namespace mulbound {

/// Sparse multivariate polynomial with exact coefficients over the field F.
/// Terms are kept in a grlex-ordered map; zero coefficients are never stored.
template <class F>
class Polynomial {
 public:
  using Elem = typename F::Elem;
  using Terms = std::map<ExpVec, Elem, GrlexLess>;

  Polynomial(const F& field, int num_vars) : field_(field), nvars_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("Polynomial: negative variable count");
  }

  static Polynomial zero(const F& field, int num_vars) { return Polynomial(field, num_vars); }

  static Polynomial constant(const F& field, int num_vars, const Elem& c) {
    Polynomial p(field, num_vars);
    p.add_term(ExpVec(num_vars, 0), c);
    return p;
  }

  static Polynomial variable(const F& field, int num_vars, int k) {
    if (k < 0 || k >= num_vars) throw std::out_of_range("Polynomial::variable");
    Polynomial p(field, num_vars);
    ExpVec e(num_vars, 0);
    e[k] = 1;
    p.add_term(e, field.one());
    return p;
  }

  static Polynomial monomial(const F& field, int num_vars, const ExpVec& e, const Elem& c) {
    Polynomial p(field, num_vars);
    p.add_term(e, c);
    return p;
  }

  const F& field() const { return field_; }
  int num_vars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Accumulate c * x^e into the polynomial.
  void add_term(const ExpVec& e, const Elem& c) {
    if (static_cast<int>(e.size()) != nvars_)
      throw std::invalid_argument("Polynomial::add_term: exponent length mismatch");
    if (field_.is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  // Max total degree; 0 for the zero polynomial by convention.
  int degree() const {
    if (terms_.empty()) return 0;
    return total_degree(terms_.rbegin()->first);
  }

  // Min total degree over stored terms; 0 for the zero polynomial.
  int min_degree() const {
    if (terms_.empty()) return 0;
    return total_degree(terms_.begin()->first);
  }

  Elem coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  Elem constant_term() const { return coeff(ExpVec(nvars_, 0)); }

  Elem linear_coeff(int k) const {
    ExpVec e(nvars_, 0);
    e[k] = 1;
    return coeff(e);
  }

  Polynomial operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, field_.neg(c));
    return r;
  }

  Polynomial negated() const {
    Polynomial r(field_, nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_.neg(c));
    return r;
  }

  Polynomial scaled(const Elem& c) const {
    Polynomial r(field_, nvars_);
    if (field_.is_zero(c)) return r;
    for (const auto& [e, v] : terms_) {
      Elem w = field_.mul(v, c);
      if (!field_.is_zero(w)) r.terms_.emplace(e, w);
    }
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    return mul_trunc(*this, o, std::numeric_limits<int>::max());
  }

  /// Product with all terms of total degree > K dropped.
  static Polynomial mul_trunc(const Polynomial& a, const Polynomial& b, int K) {
    a.check_compatible(b);
    Polynomial r(a.field_, a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    ExpVec e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      const int da = total_degree(ea);
      if (da > K) break;  // grlex ascending: all later terms have degree >= da
      for (const auto& [eb, cb] : b.terms_) {
        if (da + total_degree(eb) > K) break;
        for (int k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, a.field_.mul(ca, cb));
      }
    }
    return r;
  }

  Polynomial truncated(int K) const {
    Polynomial r(field_, nvars_);
    for (const auto& [e, c] : terms_) {
      if (total_degree(e) > K) break;
      r.terms_.emplace(e, c);
    }
    return r;
  }

  /// Substitute variables: repl[k], when set, replaces variable k. Unset
  /// variables map to themselves. The result is truncated at total degree K.
  /// `cache` memoizes monomial images across calls that share repl and K.
  Polynomial substituted(const std::vector<std::optional<Polynomial>>& repl, int K,
                         std::map<ExpVec, Polynomial, GrlexLess>* cache = nullptr) const {
    if (static_cast<int>(repl.size()) != nvars_)
      throw std::invalid_argument("Polynomial::substituted: repl size mismatch");
    std::map<ExpVec, Polynomial, GrlexLess> local_cache;
    if (cache == nullptr) cache = &local_cache;
    Polynomial r(field_, nvars_);
    for (const auto& [e, c] : terms_) {
      const Polynomial& img = monomial_image(e, repl, K, *cache);
      for (const auto& [ei, ci] : img.terms_) r.add_term(ei, field_.mul(ci, c));
    }
    return r;
  }

  /// Renumber variables. new_index[old] gives the new position, or -1 if the
  /// variable must not occur in any term.
  Polynomial remapped(const std::vector<int>& new_index, int new_nvars) const {
    if (static_cast<int>(new_index.size()) != nvars_)
      throw std::invalid_argument("Polynomial::remapped: index size mismatch");
    Polynomial r(field_, new_nvars);
    for (const auto& [e, c] : terms_) {
      ExpVec ne(new_nvars, 0);
      for (int k = 0; k < nvars_; ++k) {
        if (e[k] == 0) continue;
        if (new_index[k] < 0)
          throw std::logic_error("Polynomial::remapped: dropped variable occurs in a term");
        ne[new_index[k]] = e[k];
      }
      r.add_term(ne, c);
    }
    return r;
  }

  /// Same polynomial viewed in a larger variable set (new variables appended).
  Polynomial extended(int new_nvars) const {
    if (new_nvars < nvars_) throw std::invalid_argument("Polynomial::extended: shrinking");
    std::vector<int> idx(nvars_);
    for (int k = 0; k < nvars_; ++k) idx[k] = k;
    return remapped(idx, new_nvars);
  }

  bool operator==(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
      if (it->first != jt->first || !field_.eq(it->second, jt->second)) return false;
    }
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << field_.str(c) << ")";
      for (int k = 0; k < nvars_; ++k) {
        if (e[k] == 0) continue;
        os << "*z" << (k + 1);
        if (e[k] > 1) os << "^" << e[k];
      }
    }
    return os.str();
  }

 private:
  void check_compatible(const Polynomial& o) const {
    if (nvars_ != o.nvars_ || !(field_ == o.field_))
      throw std::invalid_argument("Polynomial: mixed variable counts or fields");
  }

  // Image of the monomial x^e under the substitution, truncated at degree K.
  // Computed by peeling one variable at a time so that every prefix product
  // is memoized in `cache`.
  const Polynomial& monomial_image(const ExpVec& e,
                                   const std::vector<std::optional<Polynomial>>& repl, int K,
                                   std::map<ExpVec, Polynomial, GrlexLess>& cache) const {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    const int deg = total_degree(e);
    if (deg == 0) {
      auto [ins, _] = cache.emplace(e, constant(field_, nvars_, field_.one()));
      return ins->second;
    }
    int k = 0;
    while (e[k] == 0) ++k;
    ExpVec prefix = e;
    prefix[k] -= 1;
    const Polynomial& head = monomial_image(prefix, repl, K, cache);
    Polynomial factor = repl[k].has_value() ? *repl[k] : variable(field_, nvars_, k);
    Polynomial img = mul_trunc(head, factor, K);
    auto [ins, _] = cache.emplace(e, std::move(img));
    return ins->second;
  }

  F field_;
  int nvars_;
  Terms terms_;
};

}  // namespace mulbound

#endif
