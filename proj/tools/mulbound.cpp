// mulbound command-line harness: bound tables, multiplicity oracle runs,
// construction fixtures, word dumps, the omega constant, envelope scans and
// the verification suite.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mulbound/asymptotics.hpp"
#include "mulbound/codim.hpp"
#include "mulbound/json_io.hpp"
#include "mulbound/verify.hpp"

using namespace mulbound;

namespace {

struct GlobalOpts {
  std::string field = "prime";
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  int trials = 3;
  int kmax = 0;  // 0 = auto
  int jobs = 1;
  std::string out;
  std::string format = "csv";  // table subcommands: csv | json
};

bool want_json(const GlobalOpts& g) {
  if (g.format == "json") return true;
  if (g.format == "csv") return false;
  throw std::invalid_argument("--format must be csv or json");
}

// Parse "lo..hi" (inclusive) or a single integer.
std::pair<long long, long long> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const long long v = std::stoll(s);
    return {v, v};
  }
  return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + g.out);
  f << text;
}

template <class Fn>
int with_field(const GlobalOpts& g, Fn&& fn) {
  if (g.field == "rational") return fn(RationalField{});
  if (g.field == "prime") return fn(PrimeField{g.prime});
  std::cerr << "error: unknown field '" << g.field << "'\n";
  return 2;
}

int cmd_bounds(const GlobalOpts& g, const std::string& i_range, const std::string& M_range,
               const std::string& a_range) {
  const auto [ilo, ihi] = parse_range(i_range);
  const auto [mlo, mhi] = parse_range(M_range);
  const auto [alo, ahi] = parse_range(a_range);
  if (ahi > mhi) {
    std::cerr << "error: requested a up to " << ahi << " exceeds M; the bounds are only "
              << "valid for codimension a <= M\n";
    return 2;
  }
  const auto rows = bound_table(static_cast<int>(ilo), static_cast<int>(ihi),
                                static_cast<int>(mlo), static_cast<int>(mhi),
                                static_cast<int>(alo), static_cast<int>(ahi), g.jobs);
  emit(g, want_json(g) ? bound_rows_to_json(rows).dump(2) + "\n" : bounds_csv(rows));
  return 0;
}

template <class F>
int run_mult(const GlobalOpts& g, const F& field, const std::string& file) {
  const auto s = load_system(file, field);
  const auto r = cycle_multiplicity(s, g.trials, g.seed, g.kmax, g.jobs);
  emit(g, mult_result_to_json(r).dump(2) + "\n");
  if (r.kind == MultKind::NoStabilization || r.kind == MultKind::IncorrectCodimension) {
    std::cerr << "note: " << to_string(r.kind) << " (" << r.stabilized_trials << "/" << r.trials
              << " trials stabilized, K_max=" << r.truncation_degree_used << ")\n";
  }
  return 0;
}

template <class F>
PolySystem<F> build_fixture(const F& field, const std::string& kind, int M, int a, int m, int d,
                            int i, int b, std::uint64_t seed) {
  if (kind == "tangency") return tangency_system(field, M, a);
  if (kind == "square-block") return square_block_system(field, m);
  if (kind == "power") return power_system(field, M, d);
  if (kind == "sample") return sample_stratum(field, i, M, d, b, seed);
  throw CLI::ValidationError("--kind must be tangency|square-block|power|sample");
}

int cmd_words(const GlobalOpts& g, int i, int M, int a, int b) {
  emit(g, words_to_json(i, M, a, b).dump(2) + "\n");
  return 0;
}

int cmd_omega(const GlobalOpts& g, long double tol) {
  const auto r = compute_omega(tol);
  std::ostringstream os;
  os << "omega " << format_ld(r.omega) << "\n"
     << "argmax_s " << format_ld(r.argmax_s) << "\n"
     << "bracket " << format_ld(r.bracket_lo) << " " << format_ld(r.bracket_hi) << "\n"
     << "iterations " << r.iterations << "\n"
     << "optimizer_gap " << format_ld(r.optimizer_gap) << "\n"
     << "tol " << format_ld(tol) << "\n";
  emit(g, os.str());
  return 0;
}

int cmd_crossover(const GlobalOpts& g, const std::string& range) {
  const auto [lo, hi] = parse_range(range);
  const auto rep = crossover_scan(lo, hi, g.jobs);
  emit(g, want_json(g) ? crossover_report_to_json(rep).dump(2) + "\n" : crossover_csv(rep));
  return 0;
}

int cmd_codim(const GlobalOpts& g, const std::string& M_range, const std::string& d_range) {
  const auto [mlo, mhi] = parse_range(M_range);
  const auto [dlo, dhi] = parse_range(d_range);
  const auto rows = codim_table(mlo, mhi, dlo, dhi);
  emit(g, want_json(g) ? codim_rows_to_json(rows).dump(2) + "\n" : codim_csv(rows));
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& level, const std::string& fixtures) {
  if (level != "fast" && level != "full") {
    std::cerr << "error: --level must be fast or full\n";
    return 2;
  }
  const auto outcome = run_verify(fixtures, level == "full", g.seed);
  emit(g, outcome.report);
  return outcome.all_pass ? 0 : 1;
}

// Writes every shipped construction plus the index used by the verification
// suite. Explicit command; nothing regenerates these silently.
int cmd_make_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const RationalField q;
  json index = json::array();

  auto write_system = [&](const std::string& name, const PolySystem<RationalField>& s,
                          const std::string& kind, long long expected, json stratum) {
    std::ofstream f(dir + "/" + name, std::ios::binary);
    f << system_to_json(s).dump(2) << "\n";
    json entry;
    entry["file"] = name;
    entry["kind"] = kind;
    entry["expected_mult"] = expected;
    entry["M"] = s.num_vars();
    entry["stratum"] = std::move(stratum);
    index.push_back(std::move(entry));
  };

  for (int M = 2; M <= 6; ++M)
    for (int a = 1; a < M; ++a)
      write_system("tangency_M" + std::to_string(M) + "_a" + std::to_string(a) + ".json",
                   tangency_system(q, M, a), "tangency", a + 1,
                   json{{"i", M}, {"M", M}, {"a", a}, {"b", 1}});
  for (int m = 1; m <= 4; ++m)
    write_system("square_block_m" + std::to_string(m) + ".json", square_block_system(q, m),
                 "square_block", 1ll << m,
                 json{{"i", m * m}, {"M", m * m}, {"a", m * m}, {"b", m}});
  for (int M = 1; M <= 4; ++M)
    for (int d = 2; d <= 3; ++d) {
      long long expected = 1;
      for (int k = 0; k < M; ++k) expected *= d;
      // the epsilon = M stratum of a power system has codimension M*M > a
      // for M >= 2, so no in-scope bound state exists; record it only for
      // the single case that fits.
      json stratum;
      if (M == 1 && d == 2)
        stratum = json{{"i", 1}, {"M", 1}, {"a", 1}, {"b", 1}};
      else
        stratum = nullptr;
      write_system("power_M" + std::to_string(M) + "_d" + std::to_string(d) + ".json",
                   power_system(q, M, d), "power", expected, std::move(stratum));
    }

  std::ofstream f(dir + "/index.json", std::ios::binary);
  f << json{{"fixtures", index}}.dump(2) << "\n";
  std::cout << "wrote " << index.size() << " fixtures to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiplicity bounds for polynomial systems: exact oracle, "
               "inductive bound tables, word combinatorics, asymptotics"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--field", g.field, "coefficient field: prime|rational")
      ->capture_default_str();
  app.add_option("--prime", g.prime, "prime modulus for --field prime")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for all randomized behavior")->capture_default_str();
  app.add_option("--trials", g.trials, "independent slicing trials")->capture_default_str();
  app.add_option("--kmax", g.kmax, "truncation cap (0 = auto)")->capture_default_str();
  app.add_option("--jobs", g.jobs, "parallel workers for table cells and trials")
      ->capture_default_str();
  app.add_option("--out", g.out, "write output to a file instead of stdout");
  app.add_option("--format", g.format, "table output format: csv|json")->capture_default_str();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "emit the bound table CSV for a range of states");
  std::string i_range = "1..4", M_range = "1..4", a_range = "0..4";
  bounds->add_option("--i", i_range, "range of i, e.g. 2..4")->capture_default_str();
  bounds->add_option("--M", M_range, "range of M")->capture_default_str();
  bounds->add_option("--a", a_range, "range of a (a <= M)")->capture_default_str();

  // mult
  auto* mult = app.add_subcommand("mult", "run the multiplicity oracle on a system file");
  std::string system_file;
  mult->add_option("--system", system_file, "system JSON file")->required();

  // fixture
  auto* fixture = app.add_subcommand("fixture", "print a named construction as system JSON");
  std::string kind = "tangency";
  int fx_M = 3, fx_a = 1, fx_m = 2, fx_d = 2, fx_i = 2, fx_b = 0;
  fixture->add_option("--kind", kind, "tangency|square-block|power|sample")
      ->capture_default_str();
  fixture->add_option("--M", fx_M, "ambient dimension")->capture_default_str();
  fixture->add_option("--a", fx_a, "tangency order")->capture_default_str();
  fixture->add_option("--m", fx_m, "square-block parameter")->capture_default_str();
  fixture->add_option("--d", fx_d, "degree")->capture_default_str();
  fixture->add_option("--i", fx_i, "tuple length (sample)")->capture_default_str();
  fixture->add_option("--b", fx_b, "stratum parameter (sample)")->capture_default_str();

  // make-fixtures
  auto* makefx = app.add_subcommand("make-fixtures", "write all shipped fixtures and the index");
  std::string fx_dir = "fixtures";
  makefx->add_option("--dir", fx_dir, "output directory")->capture_default_str();

  // words
  auto* words = app.add_subcommand("words", "dump the expansion word set for a state");
  int w_i = 2, w_M = 2, w_a = 2, w_b = 1;
  words->add_option("--i", w_i)->capture_default_str();
  words->add_option("--M", w_M)->capture_default_str();
  words->add_option("--a", w_a)->capture_default_str();
  words->add_option("--b", w_b)->capture_default_str();

  // omega
  auto* omega = app.add_subcommand("omega", "compute the growth constant omega");
  double tol = 1e-12;
  omega->add_option("--tol", tol, "refinement tolerance")->capture_default_str();

  // crossover
  auto* crossover = app.add_subcommand("crossover", "scan the asymptotic envelope against xi");
  std::string range = "1..100";
  crossover->add_option("--range", range, "inclusive M range, e.g. 1..400")
      ->capture_default_str();

  // codim
  auto* codim = app.add_subcommand("codim", "emit the codimension formula table CSV");
  std::string cd_M = "1..8", cd_d = "2..3";
  codim->add_option("--M", cd_M)->capture_default_str();
  codim->add_option("--d", cd_d)->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::string level = "fast", fixtures_dir = "fixtures";
  verify->add_option("--level", level, "fast|full")->capture_default_str();
  verify->add_option("--fixtures", fixtures_dir, "fixtures directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  try {
    if (bounds->parsed()) return cmd_bounds(g, i_range, M_range, a_range);
    if (mult->parsed())
      return with_field(g, [&](const auto& f) { return run_mult(g, f, system_file); });
    if (fixture->parsed())
      return with_field(g, [&](const auto& f) {
        emit(g, system_to_json(build_fixture(f, kind, fx_M, fx_a, fx_m, fx_d, fx_i, fx_b, g.seed))
                    .dump(2) +
                "\n");
        return 0;
      });
    if (makefx->parsed()) return cmd_make_fixtures(fx_dir);
    if (words->parsed()) return cmd_words(g, w_i, w_M, w_a, w_b);
    if (omega->parsed()) return cmd_omega(g, static_cast<long double>(tol));
    if (crossover->parsed()) return cmd_crossover(g, range);
    if (codim->parsed()) return cmd_codim(g, cd_M, cd_d);
    if (verify->parsed()) return cmd_verify(g, level, fixtures_dir);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
