#include <benchmark/benchmark.h>

#include "alc/analytic.hpp"
#include "alc/calibration.hpp"
#include "alc/dynamics.hpp"
#include "alc/pulse.hpp"

using namespace alc;

namespace {

const TransmonParams kDev{6.0, 0.196, 4};

PulseParams cancelled(double t_gate) {
  PulseParams p = PulseParams::nominal(kDev, t_gate);
  const auto s = solve_conditions(t_gate, kDev.eta_ghz);
  p.a_alc = s.a_alc;
  p.delta_alc = s.delta_alc;
  return p;
}

// Objective evaluation inside every calibration loop.
void BM_GateSummary(benchmark::State& state) {
  const auto p = cancelled(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gate_summary(p, kDev));
}
BENCHMARK(BM_GateSummary)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GateSummaryLevels(benchmark::State& state) {
  const TransmonParams q{6.0, 0.196, static_cast<int>(state.range(0))};
  const auto p = cancelled(10.0);
  for (auto _ : state) benchmark::DoNotOptimize(gate_summary(p, q));
}
BENCHMARK(BM_GateSummaryLevels)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SolveConditions(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_conditions(t, kDev.eta_ghz));
}
BENCHMARK(BM_SolveConditions)->Arg(9)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_AnalyticSpectrum(benchmark::State& state) {
  const auto p = cancelled(10.0);
  const auto f = linspace(-1.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analytic_spectrum(p, Drive::composite, f));
}
BENCHMARK(BM_AnalyticSpectrum)->Arg(801);

void BM_RefScan(benchmark::State& state) {
  const RefSimulator sim(cancelled(9.75), kDev);
  const auto t = linspace(0.0, 10.0, 201);
  for (auto _ : state) {
    double acc = 0.0;
    for (double d : t) acc += sim.leakage(d, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RefScan)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
