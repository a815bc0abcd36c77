#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mulbound/verify.hpp"

using namespace mulbound;

namespace {
namespace fs = std::filesystem;

const std::string kFixtures = MULBOUND_FIXTURES_DIR;

// Copy the shipped fixtures into a scratch directory so a single file can be
// tampered with.
fs::path clone_fixtures() {
  const fs::path dst = fs::temp_directory_path() / "mulbound_fixture_clone";
  fs::remove_all(dst);
  fs::create_directories(dst);
  for (const auto& entry : fs::directory_iterator(kFixtures))
    fs::copy_file(entry.path(), dst / entry.path().filename());
  return dst;
}

}  // namespace

TEST_CASE("fixture index loads") {
  const auto fixtures = load_fixture_index(kFixtures);
  CHECK(fixtures.size() == 27);
  long long tangency = 0, square = 0, power = 0;
  for (const auto& fx : fixtures) {
    if (fx.kind == "tangency") ++tangency;
    if (fx.kind == "square_block") ++square;
    if (fx.kind == "power") ++power;
    if (fx.kind == "tangency" || fx.kind == "square_block") CHECK(fx.has_stratum);
  }
  CHECK(tangency == 15);
  CHECK(square == 4);
  CHECK(power == 8);
}

TEST_CASE("fast verify passes and renders identically") {
  const auto first = run_verify(kFixtures, /*full=*/false);
  for (const auto& c : first.checks) {
    INFO(c.id << " " << c.name << ": " << c.detail);
    CHECK(c.pass);
  }
  CHECK(first.all_pass);
  const auto second = run_verify(kFixtures, /*full=*/false);
  CHECK(first.report == second.report);
}

TEST_CASE("tampered expected value is caught and named") {
  const fs::path dir = clone_fixtures();
  json idx;
  {
    std::ifstream in(dir / "index.json");
    in >> idx;
  }
  std::string victim;
  for (auto& fx : idx["fixtures"]) {
    if (fx["M"].get<int>() <= 4 && fx["kind"] == "square_block") {
      fx["expected_mult"] = fx["expected_mult"].get<long long>() + 1;
      victim = fx["file"].get<std::string>();
      break;
    }
  }
  REQUIRE_FALSE(victim.empty());
  {
    std::ofstream out(dir / "index.json");
    out << idx.dump(2) << "\n";
  }
  const auto outcome = run_verify(dir.string(), /*full=*/false);
  CHECK_FALSE(outcome.all_pass);
  REQUIRE_FALSE(outcome.checks.empty());
  CHECK_FALSE(outcome.checks[0].pass);  // oracle-exactness trips first
  CHECK(outcome.checks[0].detail.find(victim) != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("tampered coefficient is caught") {
  const fs::path dir = clone_fixtures();
  json sys;
  {
    std::ifstream in(dir / "tangency_M3_a2.json");
    in >> sys;
  }
  sys["polys"][2][0]["e"] = json::array({1, 0, 0});  // move the tangency cut
  {
    std::ofstream out(dir / "tangency_M3_a2.json");
    out << sys.dump(2) << "\n";
  }
  const auto outcome = run_verify(dir.string(), /*full=*/false);
  CHECK_FALSE(outcome.all_pass);
  CHECK_FALSE(outcome.checks[0].pass);
  CHECK(outcome.checks[0].detail.find("tangency_M3_a2.json") != std::string::npos);
  fs::remove_all(dir);
}
