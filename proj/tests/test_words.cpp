#include <catch2/catch_amalgamated.hpp>

#include "mulbound/words.hpp"

using namespace mulbound;

namespace {

std::vector<std::string> word_strings(const std::vector<Word>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(w.str());
  return out;
}

}  // namespace

TEST_CASE("expansion of the first diagonal example") {
  const auto words = expand_words(2, 2, 2, 1);
  CHECK(word_strings(words) == std::vector<std::string>{"A", "B0A", "B0B1"});
  // traces end at b' = 0 with a' >= 0
  for (const auto& w : words) {
    REQUIRE_FALSE(w.trace.empty());
    CHECK(w.trace.back().b == 0);
    CHECK(w.trace.back().a >= 0);
  }
  // the A step from (2,1,1) lands on (1,0,1)
  CHECK(words[0].trace.back() == TripleState{1, 0, 1});
}

TEST_CASE("b = 0 expands to the empty word") {
  const auto words = expand_words(3, 5, 2, 0);
  REQUIRE(words.size() == 1);
  CHECK(words[0].length() == 0);
  const auto part = partition_by_b1(words);
  REQUIRE(part.size() == 1);
  CHECK(part.count(0) == 1);
}

TEST_CASE("expansion of the square example") {
  const auto words = expand_words(4, 4, 4, 2);
  CHECK(words.size() == 4);
  CHECK(BigInt(words.size()) == bound_dp(4, 4, 4, 2));
  const auto part = partition_by_b1(words);
  CHECK(part.at(0).size() == 1);
  CHECK(part.at(1).size() == 2);
  CHECK(part.at(2).size() == 1);
  CHECK(check_collapse_injectivity(words));
}

TEST_CASE("partition counts B1 letters") {
  const auto words = expand_words(2, 2, 2, 1);
  const auto part = partition_by_b1(words);
  REQUIRE(part.size() == 2);
  CHECK(word_strings(part.at(0)) == std::vector<std::string>{"A", "B0A"});
  CHECK(word_strings(part.at(1)) == std::vector<std::string>{"B0B1"});
  std::size_t total = 0;
  for (const auto& [l, wl] : part) total += wl.size();
  CHECK(total == words.size());
}

TEST_CASE("nu collapse detects collisions") {
  Word w1{{Letter::B0}, {TripleState{}}};
  Word w2{{Letter::B1}, {TripleState{}}};
  CHECK_FALSE(check_collapse_injectivity({w1, w2}));
  CHECK(check_collapse_injectivity(expand_words(4, 4, 4, 2)));
}

TEST_CASE("word cap checks on named states") {
  const auto rep = check_word_caps(2, 2, 2, 1);
  REQUIRE(rep.buckets.size() == 2);
  CHECK(rep.buckets[0].count == 2);
  CHECK(rep.buckets[0].count_cap == 2);  // C(A_0, 1) with A_0 = 2
  CHECK(rep.buckets[1].count == 1);
  CHECK(rep.buckets[1].count_cap == 1);
  CHECK(rep.ok);

  const auto rep2 = check_word_caps(4, 4, 4, 2);
  CHECK(rep2.ok);
  CHECK(rep2.total_words == 4);

  const auto rep0 = check_word_caps(3, 4, 2, 0);
  CHECK(rep0.ok);
  CHECK(rep0.total_words == 1);
}

TEST_CASE("word machinery is coherent on an exhaustive small grid") {
  for (int M = 1; M <= 6; ++M)
    for (int i = 1; i <= M; ++i)
      for (int a = 0; a <= M; ++a)
        for (int b = 0; b <= i; ++b) {
          if (!feasible(i, M, a, b)) continue;
          const auto words = expand_words(i, M, a, b);
          CHECK(BigInt(words.size()) == bound_dp(i, M, a, b));
          CHECK(check_collapse_injectivity(words));
          CHECK(check_word_caps(i, M, a, b).ok);
          for (const auto& w : words) {
            CHECK(w.trace.size() == w.letters.size());
            if (!w.trace.empty()) {
              CHECK(w.trace.back().b == 0);
              CHECK(w.trace.back().a >= 0);
            }
            // every intermediate state satisfies a' >= b' * delta'
            for (const auto& t : w.trace)
              CHECK(t.a >= static_cast<long long>(t.b) * t.delta);
            // a word with l letters B1 carries exactly b - l letters A
            CHECK(w.a_count() == b - w.b1_count());
          }
        }
}
