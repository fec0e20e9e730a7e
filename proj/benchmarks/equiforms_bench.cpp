// Hot-path benchmarks: wedge products, pfaffians, the Gaussian family,
// graded exponentials, and numeric integration.
#include <benchmark/benchmark.h>

#include <random>

#include "equiforms/chern.hpp"
#include "equiforms/jsonio.hpp"

using namespace equiforms;

static void BM_WedgeProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Form a = random_form(6, rng), b = random_form(6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_WedgeProduct);

static void BM_PfaffianFull(benchmark::State& state) {
  XMatrix X = XMatrix::indeterminates(6);
  std::vector<int> I = {1, 2, 3, 4, 5, 6};
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(X, I));
}
BENCHMARK(BM_PfaffianFull);

static void BM_BetaWedge(benchmark::State& state) {
  XMatrix X = XMatrix::indeterminates(4);
  for (auto _ : state) benchmark::DoNotOptimize(beta_wedge(4, X));
}
BENCHMARK(BM_BetaWedge);

static void BM_ThomCompact(benchmark::State& state) {
  XMatrix X = XMatrix::indeterminates(3);
  for (auto _ : state) benchmark::DoNotOptimize(build_thom(3, ThomFlavor::Compact, X));
}
BENCHMARK(BM_ThomCompact);

static SuperForm<CD> bench_superform() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  int n = 4, d = 4;
  std::vector<int> parity = {0, 0, 1, 1};
  SuperForm<CD> m(d, n, parity);
  Mat<CD> b0(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (parity[i] == parity[j]) b0.at(i, j) = CD(u(rng), u(rng));
  m.add_term(0, b0);
  for (uint32_t mask : {1u, 2u, 5u}) {
    Mat<CD> l(n);
    for (auto& v : l.a) v = CD(u(rng), u(rng));
    m.add_term(mask, l);
  }
  return m;
}

static void BM_SuperExpNumeric(benchmark::State& state) {
  SuperForm<CD> m = bench_superform();
  for (auto _ : state) benchmark::DoNotOptimize(super_exp_numeric(m));
}
BENCHMARK(BM_SuperExpNumeric);

static void BM_VolterraExp(benchmark::State& state) {
  SuperForm<CD> m = bench_superform();
  for (auto _ : state) benchmark::DoNotOptimize(volterra_exp(m));
}
BENCHMARK(BM_VolterraExp);

static void BM_IntegrateAngular(benchmark::State& state) {
  ThomFamily mq = build_thom(2, ThomFlavor::MQ, XMatrix::indeterminates(2));
  EvalParams p;
  p.xvals[{1, 2}] = CD(0.7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_angular_reduction(mq.form, p));
}
BENCHMARK(BM_IntegrateAngular);

static void BM_ChTripleBott(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ch_triple(symbol_bott()));
}
BENCHMARK(BM_ChTripleBott);

BENCHMARK_MAIN();
