#include <benchmark/benchmark.h>

#include "zdring/classify.hpp"
#include "zdring/factor.hpp"
#include "zdring/harness.hpp"

using namespace zdring;

namespace {

const char* const kRings[] = {"Z(4)", "Z(12)", "Z(16)", "Z(2)[s,t]/(s^2,s*t,t^2)", "Z(2)xZ(2)xZ(2)"};

void BM_Build(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(FiniteRing::build(kRings[state.range(0)]));
  state.SetLabel(kRings[state.range(0)]);
}
BENCHMARK(BM_Build)->DenseRange(0, 4);

void BM_ClassifyElements(benchmark::State& state) {
  auto r = FiniteRing::build(kRings[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(classify_all(*r));
  state.SetLabel(kRings[state.range(0)]);
}
BENCHMARK(BM_ClassifyElements)->DenseRange(0, 4);

void BM_RingClasses(benchmark::State& state) {
  auto r = FiniteRing::build(kRings[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(ring_class_deciders(*r));
  state.SetLabel(kRings[state.range(0)]);
}
BENCHMARK(BM_RingClasses)->DenseRange(0, 4);

void BM_LengthsZ4(benchmark::State& state) {
  auto r = FiniteRing::build("Z(4)");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(set_of_lengths_xn(*r, n));
}
BENCHMARK(BM_LengthsZ4)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_LengthsZ4Search(benchmark::State& state) {
  auto r = FiniteRing::build("Z(4)");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lengths_xn_by_search(*r, n));
}
BENCHMARK(BM_LengthsZ4Search)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_FactorX(benchmark::State& state) {
  auto r = FiniteRing::build(kRings[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(factor_x(*r, 2));
  state.SetLabel(kRings[state.range(0)]);
}
BENCHMARK(BM_FactorX)->DenseRange(0, 4);

void BM_FactorBySearch(benchmark::State& state) {
  auto r = FiniteRing::build("Z(4)");
  const Poly f = parse_poly(*r, "2X^2+2X");
  for (auto _ : state) benchmark::DoNotOptimize(factorizations_by_search(f, static_cast<int>(state.range(0)), 5));
}
BENCHMARK(BM_FactorBySearch)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_Probe(benchmark::State& state) {
  auto r = FiniteRing::build("Z(2)[s,t]/(s^2,s*t,t^2)");
  for (auto _ : state) benchmark::DoNotOptimize(probe_weakly_prime_lift(*r, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Probe)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_Suite(benchmark::State& state) {
  const auto corpus = Corpus::parse("Z(4)\nZ(6)\nZ(2)xZ(2)\nZ(9)\n");
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(corpus, check_ids(), {}, 1));
}
BENCHMARK(BM_Suite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
