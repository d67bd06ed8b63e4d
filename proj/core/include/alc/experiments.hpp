#pragma once

// Scripted numerical studies: leakage versus gate time for several
// suppression strategies, frequency-shift robustness, and spectra.

#include <optional>
#include <string>
#include <vector>

#include "alc/calibration.hpp"
#include "alc/pulse.hpp"

namespace alc {

enum class Strategy { drag_fixed_alpha, drag_opt_alpha, alc_no_drag, drag_alc_iterative, drag_alc_global };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);
std::vector<Strategy> all_strategies();

struct SweepSpec {
  std::vector<double> eta_ghz = {0.158, 0.196};
  std::vector<double> t_gate_ns;  // empty -> 8.0, 8.5, ..., 16.0
  std::vector<Strategy> strategies = all_strategies();
  std::vector<double> freq_shift_mhz;
  double f10_ghz = 6.0;
  int levels = 4;
  int parallel = 1;
  CalibrationOptions calibration{};

  void validate() const;
  std::vector<double> gate_times() const;
};

std::vector<double> default_gate_times();

struct SweepRow {
  double eta_ghz = 0.0;
  double t_gate_ns = 0.0;
  Strategy strategy = Strategy::drag_fixed_alpha;
  bool ok = true;
  std::string error;
  PulseParams params;
  GateSummary metrics;

  /// Coherent leakage p2 + p3 (all levels >= 2 in general).
  double leakage() const { return metrics.leakage; }
};

/// Calibration preset behind each strategy. `iterative` may carry an
/// already-computed drag_alc_iterative record for the global strategy.
CalibrationRecord calibrate_strategy(const TransmonParams& q, double t_gate, Strategy s,
                                     const CalibrationOptions& base = {},
                                     const CalibrationRecord* iterative = nullptr);

/// One row per (eta, t_gate, strategy), ordered by eta, then t_gate, then
/// the order of spec.strategies. Failures are recorded, not thrown.
std::vector<SweepRow> run_strategy_sweep(const SweepSpec& spec);

/// Drive detunings as seen by a transmon whose f10 and f21 moved by
/// `shift_ghz`; Delta is left untouched.
PulseParams apply_frequency_shift(const PulseParams& p, double shift_ghz);

struct RobustnessRow {
  double eta_ghz = 0.0;
  double t_gate_ns = 0.0;
  Strategy strategy = Strategy::drag_fixed_alpha;
  double shift_mhz = 0.0;
  bool ok = true;
  std::string error;
  PulseParams params;  // shifted parameters actually simulated
  GateSummary metrics;

  double leakage() const { return metrics.leakage; }
};

/// Calibrates at zero shift (via run_strategy_sweep) and re-simulates each
/// calibrated pulse on every shifted device without recalibration.
std::vector<RobustnessRow> run_robustness(const SweepSpec& spec);
/// Same, reusing calibrated sweep rows.
std::vector<RobustnessRow> run_robustness(const SweepSpec& spec, const std::vector<SweepRow>& calibrated);

struct SpectrumReport {
  double eta_ghz = 0.0;
  double t_gate_ns = 0.0;
  Strategy strategy = Strategy::drag_fixed_alpha;
  double leakage = 0.0;
  SpectrumTrace band;  // composite envelope over the full band
  SpectrumTrace zoom;  // composite envelope near -eta
  double notch_offset_ghz = 0.0;  // minimum of |Omega[f]| in the zoom window

  double notch_shift_mhz() const { return 1e3 * (notch_offset_ghz + eta_ghz); }
};

struct SpectrumOptions {
  double band_half_width_ghz = 1.0;
  int band_points = 801;
  double zoom_half_width_ghz = 0.05;
  int zoom_points = 201;
};

/// Spectra of already-calibrated sweep rows.
std::vector<SpectrumReport> run_spectra_report(const std::vector<SweepRow>& rows, const SpectrumOptions& opts = {});
/// Calibrates the requested strategies first.
std::vector<SpectrumReport> run_spectra_report(double eta, const std::vector<double>& t_gates,
                                               const std::vector<Strategy>& strategies,
                                               const SpectrumOptions& opts = {}, int parallel = 1);

/// Location of the minimum of |Omega_composite[f]| within [lo, hi].
double find_notch(const PulseParams& p, double lo, double hi);

}  // namespace alc
