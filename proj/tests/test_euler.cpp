#include <random>

#include "doctest.h"
#include "ptower/euler.hpp"

using namespace ptower;

namespace {
HeckeParamsGSp4 sample_params(i64 p, i64 a, i64 b) {
  HeckeParamsGSp4 P;
  P.p = p;
  P.a = a;
  P.b = b;
  P.alpha = PadicParam::make(p, 0, Frac(1));
  P.beta = PadicParam::make(p, a + 1, Frac(1));
  P.gamma = PadicParam::make(p, b + 2, Frac(1));
  P.delta = PadicParam::make(p, a + b + 3, Frac(1));
  return P;
}
}

TEST_CASE("cyclotomic scalars") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<i64>{1, 0, 1});
  CycScalar i4 = CycScalar::zeta(4, 1);
  CHECK((i4 * i4) == CycScalar(Frac(-1)));
  CHECK((i4 * i4 * i4 * i4) == CycScalar(Frac(1)));
  CycScalar z3 = CycScalar::zeta(3, 1);
  // 1 + z + z^2 = 0
  CHECK((CycScalar(Frac(1)) + z3 + z3 * z3).is_zero());
}

TEST_CASE("designed zero: alpha = 1, q = 0 kills the first factor") {
  HeckeParamsGSp4 P = sample_params(5, 0, 0);
  auto chi = PadicParam::make(5, 0, Frac(1));
  EulerResult res = euler_gsp4(P, 0, 0, chi);
  CHECK(res.total.is_zero);
  CHECK(res.value.is_zero());
  CHECK(res.factor_valuations[0].is_zero);
}

TEST_CASE("generic valuations are ultrametric") {
  // v(1 - p^q/alpha) = 0 when q >= 1
  auto x = PadicParam::make(5, 2, Frac(1, 3));
  Valuation v = one_minus_valuation(x);
  CHECK(!v.is_zero);
  CHECK(v.v == 0);
  auto y = PadicParam::make(5, -3, Frac(2));
  CHECK(one_minus_valuation(y).v == -3);
  // unit with nontrivial unit part: cancellation to positive valuation
  auto z = PadicParam::make(5, 0, Frac(6));  // 1 - 6 = -5
  CHECK(one_minus_valuation(z).v == 1);
  auto w = PadicParam::make(5, 0, Frac(2));
  CHECK(one_minus_valuation(w).v == 0);
}

TEST_CASE("full evaluation cross-checked by straight-line arithmetic") {
  // a = b = q = r = 0, alpha = 1 + p, beta = p, gamma = p^2, delta = p^3, chi = 1
  HeckeParamsGSp4 P;
  P.p = 5;
  P.a = 0;
  P.b = 0;
  P.alpha = PadicParam::make(5, 0, Frac(6));
  P.beta = PadicParam::make(5, 1, Frac(1));
  P.gamma = PadicParam::make(5, 2, Frac(1));
  P.delta = PadicParam::make(5, 3, Frac(1));
  auto chi = PadicParam::make(5, 0, Frac(1));
  EulerResult res = euler_gsp4(P, 0, 0, chi);
  // straight-line: (1 - 1/6)(1 - 1/5)(1 - 1)... careful: gamma/p = 5, delta/p = 25
  Frac f1 = Frac(1) - Frac(1, 6);
  Frac f2 = Frac(1) - Frac(1, 5);
  Frac f3 = Frac(1) - Frac(5);
  Frac f4 = Frac(1) - Frac(25);
  Frac f5 = Frac(1) - Frac(5, 6);
  Frac f6 = Frac(1) - Frac(5, 5);
  Frac f7 = Frac(1) - Frac(25, 25);
  Frac f8 = Frac(1) - Frac(125, 25);
  Frac prod = f1 * f2 * f3 * f4 * f5 * f6 * f7 * f8;
  REQUIRE(res.value.is_rational());
  CHECK(res.value.rational() == prod);
  CHECK(res.total.is_zero == prod.is_zero());
}

TEST_CASE("5x3 product evaluation") {
  HeckeParamsGSp4 P4;
  P4.p = 5;
  P4.a = 0;
  P4.b = 0;
  P4.alpha = PadicParam::make(5, 0, Frac(1));
  P4.beta = PadicParam::make(5, 1, Frac(1));
  P4.gamma = PadicParam::make(5, 2, Frac(1));
  P4.delta = PadicParam::make(5, 3, Frac(1));
  HeckeParamsGL2 P2;
  P2.p = 5;
  P2.c = 0;
  P2.fa = PadicParam::make(5, 0, Frac(1));
  P2.fb = PadicParam::make(5, 1, Frac(1));
  EulerResult res = euler_gsp4_gl2(P4, P2, 0);
  // lambda list: beta*fb = p^2, gamma*fa = p^2, gamma*fb = p^3, delta*fa = p^3,
  // delta*fb = p^4; divided by p^2 -> (1-1)(1-1)(1-5)(1-5)(1-25): zero
  CHECK(res.total.is_zero);
  // inverted factors: p / (alpha fa) = 5: 1 - 5 = -4 appears among factors
  bool has_m4 = false;
  for (auto& f : res.factors)
    if (f.is_rational() && f.rational() == Frac(-4)) has_m4 = true;
  CHECK(has_m4);
  CHECK_THROWS_AS(euler_gsp4_gl2(P4, P2, 1), Error);
}

TEST_CASE("randomized parameter ladders: valuations and multiplicativity") {
  std::mt19937_64 rng(77);
  int zero_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    i64 p = (trial % 2) ? 5 : 7;
    i64 a = (i64)(rng() % 3), b = (i64)(rng() % 3);
    auto unit = [&]() {
      i64 n = 1 + (i64)(rng() % 6), d = 1 + (i64)(rng() % 6);
      while (n % p == 0) ++n;
      while (d % p == 0) ++d;
      return Frac(n, d);
    };
    HeckeParamsGSp4 P;
    P.p = p;
    P.a = a;
    P.b = b;
    P.alpha = PadicParam::make(p, 0, unit());
    P.beta = PadicParam::make(p, a + 1, unit());
    P.gamma = PadicParam::make(p, a + 1 + (i64)(rng() % 2), unit());
    P.delta = PadicParam::make(p, P.gamma.val + (i64)(rng() % 2), unit());
    i64 q = (i64)(rng() % (a + 1)), r = (i64)(rng() % (b + 1));
    int zord = (p == 5) ? ((trial % 4 == 0) ? 4 : 1) : ((trial % 3 == 0) ? 3 : 1);
    auto chi = PadicParam::make(p, 0, Frac(1), zord, zord > 1 ? 1 : 0);
    EulerResult res = euler_gsp4(P, q, r, chi);
    if (res.total.is_zero) {
      ++zero_cases;
      CHECK(res.value.is_zero());
      continue;
    }
    CHECK(!res.value.is_zero());
    // total = sum of factor valuations by construction; check each factor
    // against the ultrametric prediction recomputed here
    i64 sum = 0;
    for (auto& fv : res.factor_valuations) sum += fv.v;
    CHECK(res.total.v == sum);
    // multiplicativity: removing one factor and multiplying back
    size_t pick = rng() % res.factors.size();
    CycScalar partial(Frac(1));
    for (size_t i = 0; i < res.factors.size(); ++i)
      if (i != pick) partial = partial * res.factors[i];
    CHECK(partial * res.factors[pick] == res.value);
  }
  CHECK(zero_cases < 200);
}

TEST_CASE("constraint checker") {
  HeckeParamsGSp4 P = sample_params(5, 1, 2);
  CHECK(check_param_constraints(P).ok);
  CHECK(check_param_constraints(P).similitude_balanced ==
        (P.alpha.val + P.delta.val == P.beta.val + P.gamma.val &&
         (P.alpha.unit * P.delta.unit) == (P.beta.unit * P.gamma.unit)));
  HeckeParamsGSp4 bad = P;
  bad.beta = PadicParam::make(5, 5, Frac(1));
  auto rep = check_param_constraints(bad);
  CHECK(!rep.ok);
  CHECK(!rep.violation.empty());
  HeckeParamsGL2 P2;
  P2.p = 5;
  P2.c = 3;
  P2.fa = PadicParam::make(5, 0, Frac(2));
  P2.fb = PadicParam::make(5, 4, Frac(3));
  CHECK(check_param_constraints_gl2(P2).ok);
  P2.fb = PadicParam::make(5, 1, Frac(3));
  CHECK(!check_param_constraints_gl2(P2).ok);
}

TEST_CASE("triple-product admissibility parity") {
  Weight w(GroupTag::GSp4Weights, {3, 1, 2});
  CHECK(triple_admissible(w, 1, 1).ok);
  CHECK(triple_admissible(w, 1, 1).half == 2);
  CHECK(!triple_admissible(w, 1, 2).ok);
  CHECK(triple_admissible(Weight(GroupTag::GSp4Weights, {2, 0, 0}), 0, 0).ok);
}


#include <filesystem>
#include "ptower/report.hpp"
#include "ptower/tower.hpp"

TEST_CASE("suite reports are deterministic and caching replays identically") {
  using namespace ptower;
  RunConfig cfg;
  cfg.N = 11;
  cfg.p = 5;
  cfg.s = 2;
  cfg.r_max = 2;
  cfg.jobs = 2;
  Report a = run_suite("euler", cfg);
  Report b = run_suite("euler", cfg);
  CHECK(a.json(false) == b.json(false));
  CHECK(a.fails() == 0);
  // cache correctness: first call writes, second call replays byte-identically
  RingCtx R(5, 2);
  auto sp = make_space(level_Vr(11, 5, 1), Weight(GroupTag::GL2, {0, 0}), LatticeKind::Max, R);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  std::string dir = "/tmp/ptower_cache_test";
  std::filesystem::remove_all(dir);
  int builds = 0;
  auto builder = [&]() {
    ++builds;
    return reduce_op(tprime_op(sp, eta)).matrix;
  };
  Mat m1 = hecke_cached(dir, *sp, "Tprime", builder);
  Mat m2 = hecke_cached(dir, *sp, "Tprime", builder);
  CHECK(builds == 1);
  CHECK(m1 == m2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run_suite rejects invalid configurations") {
  using namespace ptower;
  RunConfig cfg;
  cfg.p = 6;  // composite
  CHECK_THROWS_AS(run_suite("euler", cfg), Error);
  RunConfig cfg2;
  cfg2.N = 10;
  cfg2.p = 5;  // p | N
  CHECK_THROWS_AS(run_suite("euler", cfg2), Error);
}
