#include <benchmark/benchmark.h>

#include "semistab/blowup_oracle.hpp"
#include "semistab/classifier.hpp"
#include "semistab/newton.hpp"
#include "semistab/report.hpp"

using namespace semistab;

namespace {

RamificationProfile example_profile() {
  RamificationProfile ram;
  ram.p = 5;
  ram.branch = {{"0", {3, 1, 1}}, {"1", {2, 1, 1, 1}}, {"lambda", {2, 1, 1, 1}}};
  return ram;
}

Cover quintic(long e, long b) {
  const FieldContext k(5, e);
  return from_critical_divisor(
      CriticalDivisor(k, {{Element(k, Rational(0)), 3}, {Element(k, Rational(1)), 2}, {Element(k, Rational(b)), 2}}));
}

void BM_classify_near_tail(benchmark::State& state) {
  const auto ram = example_profile();
  for (auto _ : state) benchmark::DoNotOptimize(classify_tail(ram, "0", "lambda", Rational(7)));
}
BENCHMARK(BM_classify_near_tail);

void BM_example_bundle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cmd_example8());
}
BENCHMARK(BM_example_bundle);

void BM_oracle_planted(benchmark::State& state) {
  // Near tail {1, 25}; needs e = 3 for the partition thicknesses.
  const Cover c = normalize(quintic(3, 25)).cover;
  for (auto _ : state) benchmark::DoNotOptimize(run_oracle(c));
}
BENCHMARK(BM_oracle_planted)->Unit(benchmark::kMillisecond);

void BM_newton_polygon(benchmark::State& state) {
  const FieldContext k(5, 2);
  PolynomialV f = PolynomialV::constant(Element::one(k));
  Element root = Element::one(k);
  for (int i = 0; i < state.range(0); ++i) {
    f = f * PolynomialV::linear(root + Element(k, Rational(i)));
    root *= Element::pi(k);
  }
  for (auto _ : state) benchmark::DoNotOptimize(root_valuations(f));
}
BENCHMARK(BM_newton_polygon)->Arg(5)->Arg(10)->Arg(20);

void BM_atlas(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cmd_atlas(state.range(0), 4));
}
BENCHMARK(BM_atlas)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
