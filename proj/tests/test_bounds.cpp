#include <catch2/catch_amalgamated.hpp>

#include "mulbound/bounds.hpp"
#include "mulbound/words.hpp"

using namespace mulbound;

TEST_CASE("feasible states") {
  CHECK(feasible(2, 2, 2, 1));
  CHECK_FALSE(feasible(4, 4, 4, 3));  // b*delta = 9 > 4
  CHECK(feasible(4, 4, 4, 2));        // b*delta = 4
  CHECK_FALSE(feasible(3, 2, 1, 0));  // i > M
  CHECK_FALSE(feasible(2, 2, 3, 0));  // a > M
  CHECK_FALSE(feasible(2, 2, -1, 0));
  CHECK(feasible(2, 2, 0, 0));
}

TEST_CASE("bound_dp base case and worked values") {
  for (int M = 1; M <= 6; ++M)
    for (int i = 1; i <= M; ++i)
      for (int a = 0; a <= M; ++a) CHECK(bound_dp(i, M, a, 0) == 1);

  CHECK(bound_dp(2, 2, 2, 1) == 3);
  CHECK(bound_dp(4, 4, 4, 2) == 4);
  for (int M = 5; M <= 9; ++M) CHECK(bound_dp(M, M, 5, 2) == 5);
  CHECK_THROWS_AS(bound_dp(4, 4, 4, 3), std::domain_error);
}

TEST_CASE("diagonal b=1 family is a+1") {
  for (int M = 1; M <= 12; ++M)
    for (int a = 1; a <= M; ++a) CHECK(bound_dp(M, M, a, 1) == a + 1);
}

TEST_CASE("closed form") {
  for (int m = 1; m <= 4; ++m) {
    const int M = m * m;
    CHECK(bound_closed_form(M, M, M, m) == (BigInt(1) << m));
  }
  CHECK(bound_closed_form(4, 4, 4, 2) == 4);  // C(2,2) + C(2,1) + 1
  CHECK(bound_closed_form(3, 5, 2, 0) == 1);  // single l = 0 term
  CHECK_THROWS_AS(bound_closed_form(4, 4, 4, 3), std::domain_error);
}

TEST_CASE("b=1 and b=2 special-case formulas") {
  for (int M = 2; M <= 10; ++M)
    for (int a = 1; a <= M; ++a) CHECK(bound_b1(M, M, a) == a + 1);
  CHECK(bound_b1(2, 3, 2) == 2);
  CHECK(bound_b1(1, 1, 1) == 2);

  CHECK(bound_b2_diag(4) == 4);
  CHECK(bound_b2_diag(5) == 5);
  CHECK(bound_b2(4, 6, 8) == 5);
  CHECK_THROWS_AS(bound_b2_diag(3), std::domain_error);
  CHECK_THROWS_AS(bound_b2(4, 6, 7), std::domain_error);  // b*delta = 8 > 7
}

TEST_CASE("b=1 exactness and b=2 consistency of the DP") {
  for (int M = 1; M <= 12; ++M)
    for (int i = 1; i <= M; ++i)
      for (int a = 0; a <= M; ++a) {
        if (feasible(i, M, a, 1)) CHECK(bound_dp(i, M, a, 1) == bound_b1(i, M, a));
        if (feasible(i, M, a, 2)) CHECK(bound_dp(i, M, a, 2) <= bound_b2(i, M, a));
      }
  // the sharpened diagonal bound is attained by the DP; in particular at the
  // named small codimensions
  const int M = 12;
  for (int a : {4, 5, 6, 8}) CHECK(bound_dp(M, M, a, 2) == bound_b2_diag(a));
  for (int a = 4; a <= M; ++a) CHECK(bound_dp(M, M, a, 2) == bound_b2_diag(a));
}

TEST_CASE("domination and monotonicity on a small grid") {
  for (int M = 1; M <= 8; ++M)
    for (int i = 1; i <= M; ++i)
      for (int b = 0; b <= i; ++b) {
        BigInt prev_dp = 0, prev_cf = 0;
        for (int a = 0; a <= M; ++a) {
          if (!feasible(i, M, a, b)) continue;
          const BigInt dp = bound_dp(i, M, a, b);
          const BigInt cf = bound_closed_form(i, M, a, b);
          CHECK(dp <= cf);
          CHECK(dp >= prev_dp);
          CHECK(cf >= prev_cf);
          prev_dp = dp;
          prev_cf = cf;
        }
      }
}

TEST_CASE("mu_upper") {
  CHECK(mu_upper(3, 3, 0) == 1);
  CHECK(mu_upper(2, 2, 2) == 3);
  CHECK(mu_upper(4, 4, 4) == 5);
  CHECK_THROWS_AS(mu_upper(3, 3, 4), std::domain_error);
  CHECK_THROWS_AS(mu_upper(3, 2, 1), std::domain_error);
}

TEST_CASE("xi bounds") {
  CHECK(xi_upper(1) == 2);
  CHECK(xi_upper(4) == 5);
  for (int m = 1; m <= 3; ++m) CHECK(xi_upper(m * m) >= (BigInt(1) << m));

  CHECK(xi_envelope_form(1) == 1);
  // M = 4: b in {1,2}; best binomial is C(4,1) = 4, prefactor 2
  CHECK(xi_envelope_form(4) == 8);
  CHECK_THROWS_AS(xi_envelope_form(0), std::domain_error);
}

TEST_CASE("word-count identity on a small grid") {
  for (int M = 1; M <= 6; ++M)
    for (int i = 1; i <= M; ++i)
      for (int a = 0; a <= M; ++a)
        for (int b = 0; b <= i; ++b) {
          if (!feasible(i, M, a, b)) continue;
          CHECK(BigInt(expand_words(i, M, a, b).size()) == bound_dp(i, M, a, b));
        }
}

TEST_CASE("bound table emission") {
  const auto rows = bound_table(4, 4, 4, 4, 0, 4);
  // feasibility enumeration: a=0 has one state, a=1..3 two, a=4 three
  CHECK(rows.size() == 10);
  long long with_b0 = 0;
  for (const auto& r : rows) {
    CHECK(feasible(r.i, r.M, r.a, r.b));
    CHECK(r.delta == r.M + r.b - r.i);
    CHECK(r.min_bound == std::min(r.dp, r.closed));
    if (r.b == 0) ++with_b0;
    if (r.a == 4 && r.b == 2) CHECK(r.min_bound == 4);
    if (r.a == 4 && r.b == 1) CHECK(r.min_bound == 5);
  }
  CHECK(with_b0 == 5);

  const std::string csv = bounds_csv(rows);
  CHECK(csv.rfind("i,M,a,b,delta,bound_dp,bound_closed_form,min_bound\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);

  // parallel fill gives the same table
  const auto rows2 = bound_table(4, 4, 4, 4, 0, 4, 4);
  CHECK(bounds_csv(rows2) == csv);
}

TEST_CASE("binomial helper") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}
