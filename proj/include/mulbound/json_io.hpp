#ifndef MULBOUND_JSON_IO_HPP
#define MULBOUND_JSON_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mulbound/asymptotics.hpp"
#include "mulbound/codim.hpp"
#include "mulbound/oracle.hpp"
#include "mulbound/system.hpp"
#include "mulbound/words.hpp"

namespace mulbound {

using nlohmann::json;

// Coefficients on the wire: prime-field residues as integers, rationals as
// "num" or "num/den" strings. Parsing accepts integers and either string form
// for both fields; serialization is canonical.

inline BigRational parse_rational_token(const json& j) {
  if (j.is_number_integer()) return BigRational(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return BigRational(BigInt(s));
    return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  }
  throw std::invalid_argument("coefficient must be an integer or a \"num/den\" string");
}

inline json coeff_to_json(const RationalField& f, const BigRational& c) {
  return json(f.str(c));
}
inline json coeff_to_json(const PrimeField&, std::uint64_t c) {
  return json(static_cast<long long>(c));
}

inline BigRational coeff_from_json(const RationalField&, const json& j) {
  return parse_rational_token(j);
}
inline std::uint64_t coeff_from_json(const PrimeField& f, const json& j) {
  const BigRational q = parse_rational_token(j);
  const BigInt p(f.modulus());
  BigInt num = boost::multiprecision::numerator(q) % p;
  BigInt den = boost::multiprecision::denominator(q) % p;
  if (num < 0) num += p;
  const auto n = f.from_long(num.convert_to<long long>());
  const auto d = f.from_long(den.convert_to<long long>());
  return f.div(n, d);
}

inline json field_to_json(const RationalField&) { return json{{"kind", "rational"}}; }
inline json field_to_json(const PrimeField& f) {
  return json{{"kind", "prime"}, {"p", f.modulus()}};
}

template <class F>
inline json system_to_json(const PolySystem<F>& s) {
  json polys = json::array();
  for (int j = 0; j < s.size(); ++j) {
    json terms = json::array();
    for (const auto& [e, c] : s.poly(j).terms()) {
      json term;
      term["e"] = e;
      term["c"] = coeff_to_json(s.field(), c);
      terms.push_back(std::move(term));
    }
    polys.push_back(std::move(terms));
  }
  json out;
  out["M"] = s.num_vars();
  out["d"] = s.degree_cap();
  out["field"] = field_to_json(s.field());
  out["polys"] = std::move(polys);
  return out;
}

/// Parse a system, interpreting the coefficients in the given target field
/// regardless of the field record in the file.
template <class F>
inline PolySystem<F> system_from_json(const json& j, const F& field) {
  if (!j.contains("M") || !j.contains("d") || !j.contains("polys"))
    throw std::invalid_argument("system JSON needs M, d and polys");
  const int M = j.at("M").get<int>();
  const int d = j.at("d").get<int>();
  std::vector<Polynomial<F>> polys;
  for (const auto& terms : j.at("polys")) {
    Polynomial<F> p(field, M);
    for (const auto& term : terms) {
      const ExpVec e = term.at("e").get<ExpVec>();
      p.add_term(e, coeff_from_json(field, term.at("c")));
    }
    polys.push_back(std::move(p));
  }
  return PolySystem<F>(field, M, d, std::move(polys));
}

template <class F>
inline PolySystem<F> load_system(const std::string& path, const F& field) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file: " + path);
  json j;
  in >> j;
  return system_from_json(j, field);
}

inline json mult_result_to_json(const MultResult& r) {
  json out;
  out["kind"] = to_string(r.kind);
  if (r.kind == MultKind::Finite) out["value"] = r.value;
  out["K"] = r.truncation_degree_used;
  out["trace"] = r.trace;
  return out;
}

inline json bound_rows_to_json(const std::vector<BoundRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back(json{{"i", r.i},
                       {"M", r.M},
                       {"a", r.a},
                       {"b", r.b},
                       {"delta", r.delta},
                       {"bound_dp", r.dp.str()},
                       {"bound_closed_form", r.closed.str()},
                       {"min_bound", r.min_bound.str()}});
  return out;
}

inline json codim_rows_to_json(const std::vector<CodimRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back(json{{"i", r.i},
                       {"M", r.M},
                       {"d", r.d},
                       {"prop31", r.prop31},
                       {"prop11", r.prop11},
                       {"line_codim", r.line_codim}});
  return out;
}

inline json crossover_report_to_json(const CrossoverReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back(json{{"M", r.M},
                        {"ln_xi_upper", format_ld(r.ln_xi)},
                        {"envelope_log", format_ld(r.envelope)},
                        {"slack", format_ld(r.slack)}});
  json out;
  out["rows"] = std::move(rows);
  out["violations"] = rep.violations;
  if (rep.threshold_exists)
    out["M0"] = rep.threshold_M0;
  else
    out["M0"] = nullptr;
  return out;
}

inline json words_to_json(int i, int M, int a, int b) {
  const auto words = expand_words(i, M, a, b);
  const auto part = partition_by_b1(words);
  json jwords = json::array();
  for (const auto& w : words) {
    json trace = json::array();
    for (const auto& t : w.trace) trace.push_back({t.a, t.b, t.delta});
    jwords.push_back(json{{"w", w.str()}, {"trace", std::move(trace)}});
  }
  json sizes;
  for (const auto& [l, wl] : part) sizes[std::to_string(l)] = wl.size();
  json out;
  out["state"] = {{"i", i}, {"M", M}, {"a", a}, {"b", b}};
  out["count"] = words.size();
  out["words"] = std::move(jwords);
  out["partition_sizes"] = std::move(sizes);
  out["collapse_injective"] = check_collapse_injectivity(words);
  return out;
}

}  // namespace mulbound

#endif
