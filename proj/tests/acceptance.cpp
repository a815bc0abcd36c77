// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>

#include "mulbound/verify.hpp"

using namespace mulbound;

namespace {

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool report(const CheckResult& c, double seconds) {
  std::printf("[%s] criterion-%s %s (n=%lld, %.1fs)\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
              c.name.c_str(), c.items, seconds);
  if (!c.pass && !c.detail.empty()) std::printf("       first counterexample: %s\n", c.detail.c_str());
  std::fflush(stdout);
  return c.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::string fixtures = "fixtures";
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--fixtures") == 0 && k + 1 < argc) fixtures = argv[k + 1];
  }

  VerifyContext ctx;
  try {
    ctx = make_verify_context(fixtures, full_scale(), 0);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot load fixtures: %s\n", e.what());
    return 1;
  }

  bool all = true;
  const auto timed = [&](auto&& fn) {
    Clock c;
    CheckResult r;
    try {
      r = fn(ctx);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    all &= report(r, c.seconds());
  };
  timed([](const VerifyContext& c) { return check_oracle_exactness(c); });
  timed([](const VerifyContext& c) { return check_group_invariance(c); });
  timed([](const VerifyContext& c) { return check_dp_paper_values(c); });
  timed([](const VerifyContext& c) { return check_domination_monotonicity(c); });
  timed([](const VerifyContext& c) { return check_word_coherence(c); });
  timed([](const VerifyContext& c) { return check_bounds_dominate(c); });
  timed([](const VerifyContext& c) { return check_omega_stability(c); });
  timed([](const VerifyContext& c) { return check_envelope_scan(c); });
  timed([](const VerifyContext& c) { return check_codim_formulas(c); });
  {
    // criterion 10: byte-identical fast verify reports plus full field agreement
    Clock c;
    CheckResult ten = check_field_agreement(ctx);
    if (ten.pass) {
      const auto first = run_verify(fixtures, /*full=*/false);
      const auto second = run_verify(fixtures, /*full=*/false);
      ten.items += 2;
      if (!first.all_pass) {
        ten.pass = false;
        ten.detail = "fast verify failed";
      } else if (first.report != second.report) {
        ten.pass = false;
        ten.detail = "fast verify reports differ between runs";
      }
    }
    ten.name = "determinism-and-fields";
    all &= report(ten, c.seconds());
  }

  std::printf("%s\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return all ? 0 : 1;
}
