// Microbenchmarks for the exact kernels: dense Smith form, normalized Hecke
// application, ordinary idempotent, Euler factor evaluation.

#include <benchmark/benchmark.h>

#include <random>

#include "ptower/euler.hpp"
#include "ptower/tower.hpp"

using namespace ptower;

static void BM_SmithForm(benchmark::State& state) {
  RingCtx R(5, 2);
  std::mt19937_64 rng(1);
  int n = (int)state.range(0);
  Mat A(R, n, n);
  for (auto& v : A.a) v = rng() % R.ps;
  for (auto _ : state) {
    SmithForm S = smith_form(A);
    benchmark::DoNotOptimize(S.divisor_exp.data());
  }
}
BENCHMARK(BM_SmithForm)->Arg(32)->Arg(64)->Arg(128);

static void BM_HeckeReduce(benchmark::State& state) {
  RingCtx R(5, 2);
  auto sp = make_space(level_Vr(11, 5, 1), Weight(GroupTag::GL2, {0, -2}), LatticeKind::Max, R);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  for (auto _ : state) {
    Mat M = reduce_op(tprime_op(sp, eta)).matrix;
    benchmark::DoNotOptimize(M.a.data());
  }
}
BENCHMARK(BM_HeckeReduce);

static void BM_OrdinaryIdempotent(benchmark::State& state) {
  RingCtx R(5, 2);
  auto sp = make_space(level_Vr(11, 5, 1), Weight(GroupTag::GL2, {0, 0}), LatticeKind::Max, R);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  Mat T = reduce_op(tprime_op(sp, eta)).matrix;
  for (auto _ : state) {
    OrdinaryData od = stable_idempotent(T, nullptr);
    benchmark::DoNotOptimize(od.free_rank);
  }
}
BENCHMARK(BM_OrdinaryIdempotent);

static void BM_EulerGsp4(benchmark::State& state) {
  HeckeParamsGSp4 P;
  P.p = 5;
  P.a = 2;
  P.b = 2;
  P.alpha = PadicParam::make(5, 0, Frac(3, 2));
  P.beta = PadicParam::make(5, 3, Frac(7, 4));
  P.gamma = PadicParam::make(5, 4, Frac(2));
  P.delta = PadicParam::make(5, 7, Frac(11, 3));
  auto chi = PadicParam::make(5, 0, Frac(1), 4, 1);
  for (auto _ : state) {
    EulerResult res = euler_gsp4(P, 1, 1, chi);
    benchmark::DoNotOptimize(res.total.v);
  }
}
BENCHMARK(BM_EulerGsp4);

BENCHMARK_MAIN();
