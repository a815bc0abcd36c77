#include <catch2/catch_amalgamated.hpp>

#include "mulbound/oracle.hpp"

using namespace mulbound;

namespace {

const RationalField Q;
const PrimeField Fp;

template <class F>
Polynomial<F> from_terms(const F& f, int M,
                         std::initializer_list<std::pair<ExpVec, long long>> terms) {
  Polynomial<F> p(f, M);
  for (const auto& [e, c] : terms) p.add_term(e, f.from_long(c));
  return p;
}

// Independent oracle for pure-power monomial systems: enumerate the standard
// monomials (every exponent below its generator's degree) by brute force.
long long standard_monomial_count(const std::vector<int>& degs) {
  long long count = 0;
  std::vector<int> e(degs.size(), 0);
  while (true) {
    ++count;
    int k = 0;
    while (k < static_cast<int>(degs.size())) {
      if (++e[k] < degs[k]) break;
      e[k] = 0;
      ++k;
    }
    if (k == static_cast<int>(degs.size())) break;
  }
  return count;
}

}  // namespace

TEST_CASE("local_colength on closed-form systems") {
  // maximal ideal -> 1
  for (int M = 1; M <= 4; ++M) {
    std::vector<Polynomial<RationalField>> polys;
    for (int k = 0; k < M; ++k) polys.push_back(Polynomial<RationalField>::variable(Q, M, k));
    auto r = local_colength(PolySystem<RationalField>(Q, M, 2, polys), 10);
    REQUIRE(r.kind == MultKind::Finite);
    CHECK(r.value == 1);
  }

  // (z2 - z1^2, z2): ideal (z1^2, z2), basis {1, z1}
  PolySystem<RationalField> tangent(
      Q, 2, 2,
      {from_terms(Q, 2, {{{0, 1}, 1}, {{2, 0}, -1}}), Polynomial<RationalField>::variable(Q, 2, 1)});
  auto rt = local_colength(tangent, 10);
  REQUIRE(rt.kind == MultKind::Finite);
  CHECK(rt.value == 2);

  // (z1^2, z2^2): basis {1, z1, z2, z1 z2}
  PolySystem<RationalField> sq(Q, 2, 2,
                               {from_terms(Q, 2, {{{2, 0}, 1}}), from_terms(Q, 2, {{{0, 2}, 1}})});
  auto rs = local_colength(sq, 10);
  REQUIRE(rs.kind == MultKind::Finite);
  CHECK(rs.value == 4);

  // powers: independent brute-force count of standard monomials equals d^M
  for (int M = 1; M <= 3; ++M)
    for (int d = 2; d <= 3; ++d) {
      auto r = local_colength(power_system(Fp, M, d), default_kmax(d));
      REQUIRE(r.kind == MultKind::Finite);
      CHECK(r.value == standard_monomial_count(std::vector<int>(M, d)));
    }
}

TEST_CASE("local_colength argument validation") {
  auto s = power_system(Q, 2, 2);
  CHECK_THROWS_AS(local_colength(s, 1), std::invalid_argument);
  PolySystem<RationalField> wide(Q, 2, 2, {from_terms(Q, 2, {{{2, 0}, 1}})});
  CHECK_THROWS_AS(local_colength(wide, 10), std::invalid_argument);
}

TEST_CASE("trace is monotone and stabilization is permanent") {
  auto s = power_system(Fp, 3, 2);
  auto r = local_colength(s, 12);
  REQUIRE(r.kind == MultKind::Finite);
  CHECK(r.value == 8);
  for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k] >= r.trace[k - 1]);
  // recompute the dimension one degree past the stopping point
  auto pre = presolve_linear(s);
  const int n = static_cast<int>(pre.core_vars.size());
  const int K = r.truncation_degree_used + 1;
  CHECK(truncated_colength(Fp, presolved_core_at(pre, K), n, K) == r.value);
}

TEST_CASE("positive-dimensional zero set never stabilizes") {
  // (z1^2, z1^2) cuts a line: the quotient keeps growing
  PolySystem<RationalField> degen(Q, 2, 2,
                                  {from_terms(Q, 2, {{{2, 0}, 1}}), from_terms(Q, 2, {{{2, 0}, 2}})});
  auto r = local_colength(degen, 8);
  CHECK(r.kind == MultKind::NoStabilization);
  CHECK(r.truncation_degree_used == 8);
}

TEST_CASE("cycle_multiplicity") {
  // i = M: identical to local_colength
  auto sq = square_block_system(Fp, 2);
  auto rc = cycle_multiplicity(sq, 3, 42, 0);
  REQUIRE(rc.kind == MultKind::Finite);
  CHECK(rc.value == 4);
  CHECK(rc.value == local_colength(sq, default_kmax(2)).value);

  // a double line in the plane sliced by a generic line
  PolySystem<RationalField> dline(Q, 2, 2, {from_terms(Q, 2, {{{2, 0}, 1}})});
  auto rd = cycle_multiplicity(dline, 3, 1, 0);
  REQUIRE(rd.kind == MultKind::Finite);
  CHECK(rd.value == 2);

  // smooth curve: first M-1 equations of the tangency construction
  auto t32 = tangency_system(Q, 3, 2);
  PolySystem<RationalField> curve(Q, 3, 2, {t32.poly(0), t32.poly(1)});
  auto rcur = cycle_multiplicity(curve, 3, 5, 0);
  REQUIRE(rcur.kind == MultKind::Finite);
  CHECK(rcur.value == 1);

  // node: both branches meet a generic slice transversally
  PolySystem<RationalField> node(Q, 2, 2, {from_terms(Q, 2, {{{1, 1}, 1}})});
  auto rn = cycle_multiplicity(node, 3, 7, 0);
  REQUIRE(rn.kind == MultKind::Finite);
  CHECK(rn.value == 2);

  CHECK_THROWS_AS(cycle_multiplicity(node, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("incorrect codimension is reported, not guessed") {
  // zero polynomial: Z(0) is the whole plane, codimension 0 <= i-1
  PolySystem<RationalField> zero(Q, 2, 2, {Polynomial<RationalField>::zero(Q, 2)});
  auto r = cycle_multiplicity(zero, 3, 11, 6);
  CHECK(r.kind == MultKind::IncorrectCodimension);
  CHECK(r.stabilized_trials == 0);
  REQUIRE(r.trial_kinds.size() == 3);
  for (auto k : r.trial_kinds) CHECK(k == MultKind::NoStabilization);
  CHECK(is_mult_at_least(zero, 1000000, 3, 11, 6));
}

TEST_CASE("hand-checked plane curve singularities") {
  // cusp z1^2 - z2^3: order 2 at the origin
  PolySystem<RationalField> cusp(Q, 2, 3,
                                 {from_terms(Q, 2, {{{2, 0}, 1}, {{0, 3}, -1}})});
  CHECK(cycle_multiplicity(cusp, 3, 2, 0).value == 2);

  // two conics meeting doubly: (z2 - z1^2, z2 + z1^2) generates (z2, z1^2)
  PolySystem<RationalField> conics(
      Q, 2, 2,
      {from_terms(Q, 2, {{{0, 1}, 1}, {{2, 0}, -1}}), from_terms(Q, 2, {{{0, 1}, 1}, {{2, 0}, 1}})});
  CHECK(local_colength(conics, 10).value == 2);

  // (z1 z2, z1 + z2): restricting to the line gives -z1^2
  PolySystem<RationalField> mixed(
      Q, 2, 2,
      {from_terms(Q, 2, {{{1, 1}, 1}}), from_terms(Q, 2, {{{1, 0}, 1}, {{0, 1}, 1}})});
  CHECK(local_colength(mixed, 10).value == 2);

  // duplicated equation with nonzero linear part: still a curve, never stabilizes
  PolySystem<RationalField> dup(
      Q, 2, 2,
      {from_terms(Q, 2, {{{0, 1}, 1}, {{2, 0}, -1}}), from_terms(Q, 2, {{{0, 1}, 1}, {{2, 0}, -1}})});
  CHECK(local_colength(dup, 8).kind == MultKind::NoStabilization);
}

TEST_CASE("is_mult_at_least") {
  PolySystem<RationalField> sq(Q, 2, 2,
                               {from_terms(Q, 2, {{{2, 0}, 1}}), from_terms(Q, 2, {{{0, 2}, 1}})});
  CHECK(is_mult_at_least(sq, 4, 3, 1, 0));
  CHECK_FALSE(is_mult_at_least(sq, 5, 3, 1, 0));

  PolySystem<RationalField> smooth(Q, 2, 2,
                                   {Polynomial<RationalField>::variable(Q, 2, 0),
                                    Polynomial<RationalField>::variable(Q, 2, 1)});
  CHECK_FALSE(is_mult_at_least(smooth, 2, 3, 1, 0));
  CHECK(is_mult_at_least(square_block_system(Q, 2), 4, 3, 1, 0));
  CHECK_FALSE(is_mult_at_least(square_block_system(Q, 2), 5, 3, 1, 0));
}

TEST_CASE("tangency family oracle values") {
  for (int M = 2; M <= 5; ++M)
    for (int a = 1; a < M; ++a) {
      auto r = local_colength(tangency_system(Fp, M, a), 0 + default_kmax(2) + 2 * M);
      REQUIRE(r.kind == MultKind::Finite);
      CHECK(r.value == a + 1);
    }
}

TEST_CASE("group invariance of the multiplicity") {
  std::mt19937_64 rng = make_rng(555, 1);
  std::vector<PolySystem<PrimeField>> fixtures{square_block_system(Fp, 2),
                                               tangency_system(Fp, 4, 2),
                                               power_system(Fp, 3, 2)};
  for (const auto& s : fixtures) {
    const auto base = cycle_multiplicity(s, 1, 0, 0);
    REQUIRE(base.kind == MultKind::Finite);
    for (int rep = 0; rep < 4; ++rep) {
      auto g = random_invertible(Fp, s.num_vars(), rng);
      auto h = random_invertible(Fp, s.size(), rng);
      auto ts = transform_rows(transform_coords(s, g), h);
      auto r = cycle_multiplicity(ts, 1, 0, 0);
      REQUIRE(r.kind == MultKind::Finite);
      CHECK(r.value == base.value);
    }
  }
}

TEST_CASE("reduce_standard_form preserves the multiplicity") {
  auto s = tangency_system(Fp, 4, 2);
  auto red = reduce_standard_form(s);
  CHECK(local_colength(red, 12).value == local_colength(s, 12).value);
}

TEST_CASE("block multiplicativity over disjoint variables") {
  // (z1^2, z2^3) in separate variables: colength 2 * 3
  PolySystem<RationalField> blocks(
      Q, 2, 3, {from_terms(Q, 2, {{{2, 0}, 1}}), from_terms(Q, 2, {{{0, 3}, 1}})});
  CHECK(local_colength(blocks, 12).value == 6);
  // (z1^2, z2^2) x (z3^3): 4 * 3
  PolySystem<RationalField> blocks3(Q, 3, 3,
                                    {from_terms(Q, 3, {{{2, 0, 0}, 1}}),
                                     from_terms(Q, 3, {{{0, 2, 0}, 1}}),
                                     from_terms(Q, 3, {{{0, 0, 3}, 1}})});
  CHECK(local_colength(blocks3, 14).value == 12);
}

TEST_CASE("slicing consistency under embedding") {
  auto sq = square_block_system(Q, 2);
  const auto direct = local_colength(sq, 10);
  auto embedded = embed(sq, 5);  // same tuple, one spare variable
  auto sliced = cycle_multiplicity(embedded, 3, 3, 10);
  REQUIRE(sliced.kind == MultKind::Finite);
  CHECK(sliced.value == direct.value);
}

TEST_CASE("parallel trials merge deterministically") {
  PolySystem<RationalField> node(Q, 2, 2, {from_terms(Q, 2, {{{1, 1}, 1}})});
  const auto seq = cycle_multiplicity(node, 4, 9, 0, 1);
  const auto par = cycle_multiplicity(node, 4, 9, 0, 3);
  CHECK(seq.kind == par.kind);
  CHECK(seq.value == par.value);
  CHECK(seq.trace == par.trace);
  CHECK(seq.stabilized_trials == par.stabilized_trials);
}

TEST_CASE("epsilon zero means multiplicity one") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto s = sample_stratum(Fp, 2, 3, 2, 0, seed);
    auto r = cycle_multiplicity(s, 3, seed, 0);
    REQUIRE(r.kind == MultKind::Finite);
    CHECK(r.value == 1);
  }
}

TEST_CASE("transformed monomial complete intersections keep their multiplicity") {
  // (z_1^{a_1},...,z_M^{a_M}) has multiplicity prod a_j; random invertible
  // coordinate and row transforms must not change it.
  std::mt19937_64 rng = make_rng(777, 2);
  for (int rep = 0; rep < 12; ++rep) {
    const int M = 2 + static_cast<int>(uniform_below(rng, 3));
    long long expected = 1;
    std::vector<Polynomial<PrimeField>> polys;
    for (int k = 0; k < M; ++k) {
      const int a = 1 + static_cast<int>(uniform_below(rng, 3));
      expected *= a;
      ExpVec e(M, 0);
      e[k] = a;
      polys.push_back(Polynomial<PrimeField>::monomial(Fp, M, e, Fp.one()));
    }
    PolySystem<PrimeField> s(Fp, M, 3, std::move(polys));
    auto g = random_invertible(Fp, M, rng);
    auto h = random_invertible(Fp, M, rng);
    auto ts = transform_rows(transform_coords(s, g), h);
    auto r = local_colength(ts, 2 + 4 * static_cast<int>(expected));
    REQUIRE(r.kind == MultKind::Finite);
    CHECK(r.value == expected);
  }
}

TEST_CASE("prime and rational oracles agree on fixtures") {
  std::vector<int> ms{1, 2, 3};
  for (int m : ms) {
    auto rq = local_colength(square_block_system(Q, m), 10);
    auto rp = local_colength(square_block_system(Fp, m), 10);
    CHECK(rq.value == rp.value);
    CHECK(rq.trace == rp.trace);
  }
  for (int M = 2; M <= 4; ++M)
    for (int a = 1; a < M; ++a) {
      CHECK(local_colength(tangency_system(Q, M, a), 12).value ==
            local_colength(tangency_system(Fp, M, a), 12).value);
    }
}
