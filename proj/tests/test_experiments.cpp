#include <gtest/gtest.h>

#include <cmath>

#include "alc/experiments.hpp"

using namespace alc;

namespace {

// One operating point, three strategies; reused by every test in this file.
const std::vector<SweepRow>& small_sweep() {
  static const std::vector<SweepRow> rows = [] {
    SweepSpec spec;
    spec.eta_ghz = {0.196};
    spec.t_gate_ns = {10.0};
    spec.strategies = {Strategy::drag_fixed_alpha, Strategy::drag_alc_iterative, Strategy::drag_alc_global};
    return run_strategy_sweep(spec);
  }();
  return rows;
}

}  // namespace

TEST(Strategy, NamesRoundTrip) {
  for (Strategy s : all_strategies()) EXPECT_EQ(strategy_from_string(to_string(s)), s);
  EXPECT_EQ(all_strategies().size(), 5u);
  EXPECT_THROW(strategy_from_string("drag"), InvalidParameter);
}

TEST(SweepSpec, DefaultsAndValidation) {
  SweepSpec spec;
  const auto t = spec.gate_times();
  ASSERT_EQ(t.size(), 17u);
  EXPECT_DOUBLE_EQ(t.front(), 8.0);
  EXPECT_DOUBLE_EQ(t.back(), 16.0);
  EXPECT_NO_THROW(spec.validate());
  auto bad = spec;
  bad.strategies.clear();
  EXPECT_THROW(bad.validate(), InvalidParameter);
  bad = spec;
  bad.eta_ghz.clear();
  EXPECT_THROW(bad.validate(), InvalidParameter);
  bad = spec;
  bad.t_gate_ns = {10.0, -1.0};
  EXPECT_THROW(bad.validate(), InvalidParameter);
  bad = spec;
  bad.parallel = 0;
  EXPECT_THROW(run_strategy_sweep(bad), InvalidParameter);
}

TEST(StrategySweep, RowsOrderedAndOrdered) {
  const auto& rows = small_sweep();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].strategy, Strategy::drag_fixed_alpha);
  EXPECT_EQ(rows[1].strategy, Strategy::drag_alc_iterative);
  EXPECT_EQ(rows[2].strategy, Strategy::drag_alc_global);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.ok) << r.error;
    EXPECT_NEAR(r.leakage(), r.metrics.p2() + r.metrics.p3(), 1e-18);
  }
  // global <= iterative <= drag-only, with 10% optimiser slack
  EXPECT_LE(rows[2].leakage(), 1.1 * rows[1].leakage());
  EXPECT_LE(rows[1].leakage(), 1.1 * rows[0].leakage());
  EXPECT_EQ(rows[0].params.a_alc, 0.0);
  EXPECT_DOUBLE_EQ(rows[0].params.alpha, 1.0);
}

TEST(StrategySweep, RowsReproduceFromParameters) {
  for (const auto& r : small_sweep()) {
    const auto again = gate_summary(r.params, {6.0, r.eta_ghz, 4});
    EXPECT_EQ(again.leakage, r.metrics.leakage);
    EXPECT_EQ(again.comp_fidelity, r.metrics.comp_fidelity);
  }
}

TEST(FrequencyShift, MovesBothTonesOnly) {
  PulseParams p;
  p.delta_main = -0.003;
  p.delta_alc = -0.205;
  p.big_delta = -0.193;
  const auto s = apply_frequency_shift(p, 0.001);
  EXPECT_DOUBLE_EQ(s.delta_main, -0.004);
  EXPECT_DOUBLE_EQ(s.delta_alc, -0.206);
  EXPECT_DOUBLE_EQ(s.big_delta, -0.193);
  EXPECT_EQ(apply_frequency_shift(p, 0.0), p);
}

TEST(Robustness, ZeroShiftReproducesSweep) {
  SweepSpec spec;
  spec.eta_ghz = {0.196};
  spec.t_gate_ns = {10.0};
  spec.strategies = {Strategy::drag_fixed_alpha, Strategy::drag_alc_iterative, Strategy::drag_alc_global};
  spec.freq_shift_mhz = {-1.0, 0.0, 1.0};
  const auto rows = run_robustness(spec, small_sweep());
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.ok) << r.error;
    if (r.shift_mhz != 0.0) continue;
    const auto& ref = small_sweep()[static_cast<std::size_t>(r.strategy == Strategy::drag_fixed_alpha ? 0
                                                             : r.strategy == Strategy::drag_alc_iterative ? 1
                                                                                                            : 2)];
    EXPECT_EQ(r.metrics.leakage, ref.metrics.leakage);
    EXPECT_EQ(r.params, ref.params);
  }
  // A 1 MHz shift hurts the cancelled gate but it stays well below drag-only.
  double drag = 0.0, alc = 0.0;
  for (const auto& r : rows) {
    if (r.shift_mhz != 1.0) continue;
    if (r.strategy == Strategy::drag_fixed_alpha) drag = r.leakage();
    if (r.strategy == Strategy::drag_alc_global) alc = r.leakage();
  }
  EXPECT_GT(drag / alc, 10.0);
}

TEST(Spectra, FixedAlphaNotchSitsOnLeakageLine) {
  const auto reports = run_spectra_report(small_sweep());
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_NEAR(reports[0].notch_offset_ghz, -0.196, 1e-7);
  EXPECT_EQ(reports[0].band.freqs.size(), 801u);
  EXPECT_EQ(reports[0].zoom.freqs.size(), 201u);
  // The ALC tone moves the composite notch off -eta, and equal-looking
  // spectra still differ in leakage by orders of magnitude.
  EXPECT_GT(std::abs(reports[1].notch_shift_mhz()), 0.01);
  EXPECT_GT(reports[0].leakage / reports[2].leakage, 100.0);
}

TEST(Spectra, FindNotchOnDragPulse) {
  const TransmonParams q{6.0, 0.158, 4};
  auto p = PulseParams::nominal(q, 12.0);
  p.delta_main = -0.006;
  p.bind_notch(q.eta_ghz, NotchBinding::follow_detuning);
  EXPECT_NEAR(find_notch(p, -0.2, -0.12), -0.158, 1e-7);
  p.bind_notch(q.eta_ghz, NotchBinding::fixed_eta);
  EXPECT_NEAR(find_notch(p, -0.2, -0.12), -0.158 - 0.006, 1e-7);
}
