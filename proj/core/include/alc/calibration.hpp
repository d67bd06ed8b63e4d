#pragma once

// Ramsey error filter (REF) sequences and pulse calibration.
//
// One REF repetition is two pi/2 gates followed by an idle of t_delay. Small
// per-gate leakage amplitudes add coherently when
//
//   eta (4 t_gate + 2 t_delay) = k + 1/2
//
// so |2> population on those delays grows as n_reps^2. Even k gives type-A
// peaks, odd k type-B peaks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alc/dynamics.hpp"
#include "alc/model.hpp"
#include "alc/optimize.hpp"

namespace alc {

// ---------------------------------------------------------------------------
// REF sequence

enum class DelayMode {
  free_evolution,  // exact Kerr phases during the idle
  virtual_z,       // idle replaced by the equivalent frame rotation
};

struct RefOptions {
  DelayMode delay = DelayMode::free_evolution;
  int shots = 0;  // > 0 samples p2 binomially
  std::uint64_t seed = 0;
  GateTarget target = GateTarget::x90;
  IntegratorOptions integrator{};
};

/// Caches the gate unitary so repeated delays and repetition counts are cheap.
class RefSimulator {
 public:
  RefSimulator(const PulseParams& p, const TransmonParams& q, const RefOptions& opts = {});

  /// Noiseless leakage sum_{n>=2} p_n after n_reps repetitions from |0>.
  double leakage(double t_delay, int n_reps) const;
  /// Same as leakage(), with binomial sampling when opts.shots > 0. The
  /// sample stream is a pure function of (seed, t_delay, n_reps).
  double measure(double t_delay, int n_reps) const;
  CVector final_state(double t_delay, int n_reps) const;

  const CMatrix& gate() const { return gate_; }
  const TransmonParams& device() const { return device_; }
  const RefOptions& options() const { return opts_; }

 private:
  CMatrix idle(double t_delay) const;

  CMatrix gate_;
  TransmonParams device_;
  RefOptions opts_;
};

/// One-shot wrapper around RefSimulator::measure. n_reps < 2 is rejected.
double ref_sequence(const PulseParams& p, const TransmonParams& q, double t_delay, int n_reps,
                    const RefOptions& opts = {});

enum class PeakType { a, b };

struct PredictedPeak {
  int k = 0;
  double t_delay = 0.0;
  PeakType type = PeakType::a;
};

/// Interference delays for k = 0..k_max; negative delays are dropped.
std::vector<PredictedPeak> predict_peaks(double t_gate, double eta, int k_max);

struct RefPeak {
  int k = 0;
  PeakType type = PeakType::a;
  double predicted_delay = 0.0;
  double t_delay = 0.0;  // grid maximum nearest the prediction
  double height = 0.0;
};

struct RefScan {
  std::vector<double> t_delay;
  std::vector<double> p2;
  int n_reps = 0;
  std::vector<RefPeak> peaks;
};

/// Scans t_delay on a uniform grid and reports the grid maximum within a
/// quarter period (1/(4 eta)) of each predicted peak.
RefScan ref_scan(const PulseParams& p, const TransmonParams& q, double t_min, double t_max, int points,
                 int n_reps, const RefOptions& opts = {});

/// Local maximum of the noiseless leakage within 1/(8 eta) of `guess`.
RefPeak refine_peak(const RefSimulator& sim, const PredictedPeak& guess, int n_reps);

/// |2> amplitudes picked up by the first pair of pi/2 gates (c, from |0>)
/// and the second pair (c', from |1>).
struct SegmentAmplitudes {
  Complex c;
  Complex c_prime;
};

SegmentAmplitudes extract_segment_amplitudes(const CMatrix& gate);

struct PeakHeights {
  double a = 0.0;
  double b = 0.0;
};

/// pA = N^2 |c - i c'|^2, pB = N^2 |c + i c'|^2 for n_reps = 2N.
PeakHeights peak_height_model(Complex c, Complex c_prime, int n);

enum class RefObjective { mean_ab, a_only, b_only };

struct AlcGridScan {
  std::vector<double> a_alc;
  std::vector<double> delta_alc;
  std::vector<double> objective;  // row-major: a_alc index major
  double a_peak_delay = 0.0;
  double b_peak_delay = 0.0;
  int n_reps = 0;
  double grid_a_alc = 0.0;  // grid argmin
  double grid_delta_alc = 0.0;
  double a_alc_opt = 0.0;   // after local polish
  double delta_alc_opt = 0.0;
  double objective_opt = 0.0;
  int evaluations = 0;

  double at(std::size_t i, std::size_t j) const { return objective[i * delta_alc.size() + j]; }
};

struct AlcGridOptions {
  RefObjective objective = RefObjective::mean_ab;
  bool polish = true;
  int polish_evaluations = 200;
  int parallel = 1;
  RefOptions ref{};
};

/// REF objective mapped over (A_alc, delta_alc). Peak delays are the lowest
/// valid type-A and type-B delays, refined on the pulse `p` as given.
AlcGridScan alc_grid_scan(const PulseParams& p, const TransmonParams& q, const std::vector<double>& a_alc,
                          const std::vector<double>& delta_alc, int n_reps, const AlcGridOptions& opts = {});

/// REF p2 at fixed delays for the given pulse.
PeakHeights ref_peak_heights(const PulseParams& p, const TransmonParams& q, double a_delay, double b_delay,
                             int n_reps, const RefOptions& opts = {});

// ---------------------------------------------------------------------------
// Calibration

enum class CalibrationMethod { iterative, global, analytic_seeded };
enum class Step2Mode { direct, ref };
enum class AlphaMode {
  fixed,      // alpha stays at its seed value (1)
  optimized,  // alpha joins the primary parameters; objective is total gate error
  off,        // alpha = 0
};

struct CalibrationOptions {
  NotchBinding binding = NotchBinding::follow_detuning;
  AlphaMode alpha_mode = AlphaMode::fixed;
  Step2Mode step2 = Step2Mode::direct;
  bool enable_alc = true;  // false stops after step 1
  GateTarget target = GateTarget::x90;
  IntegratorOptions integrator{};
  NelderMeadOptions primary{1000, 2, 1e-7, 1e-12, 1e-4, true, true};
  NelderMeadOptions alc{600, 2, 1e-7, 1e-12, 1e-4, true, true};
  NelderMeadOptions joint{1500, 2, 1e-7, 1e-12, 1e-4, true, true};
  // REF step 2
  int ref_n_reps = 10;
  int ref_grid_points = 11;
  AlcGridOptions ref_grid{};
};

struct CalibrationTraceEntry {
  std::string stage;
  int evaluation = 0;  // cumulative over the whole calibration
  double objective = 0.0;
};

struct CalibrationStage {
  std::string name;
  std::string objective;  // "subspace_error", "comp_error", "p2", "ref_mean_ab", "analytic"
  PulseParams params;
  GateSummary metrics;
  int evaluations = 0;
  bool converged = true;
  std::string message;
};

struct CalibrationRecord {
  CalibrationMethod method = CalibrationMethod::iterative;
  TransmonParams device;
  PulseParams params;
  GateSummary metrics;
  std::vector<CalibrationStage> stages;
  std::vector<CalibrationTraceEntry> trace;

  double leakage() const { return metrics.leakage; }
  double comp_fidelity() const { return metrics.comp_fidelity; }
  int evaluations() const { return trace.empty() ? 0 : trace.back().evaluation; }
  bool converged() const;
};

/// Objective of a named stage evaluated at `p`; the final trace entry of a
/// record equals stage_objective(last stage objective, record.params).
double stage_objective(const std::string& objective, const PulseParams& p, const TransmonParams& q,
                       const CalibrationOptions& opts = {});

/// Step 1: primary drive (A_main, delta_main, z) at A_alc = 0; step 2: ALC
/// tone (A_alc, delta_alc); step 3: primary drive again with ALC on.
CalibrationRecord calibrate_iterative(const TransmonParams& q, double t_gate, const CalibrationOptions& opts = {});

/// Joint minimisation of total gate error over (A_main, delta_main, z,
/// A_alc, delta_alc) starting from `seed`.
CalibrationRecord calibrate_global(const TransmonParams& q, double t_gate, const CalibrationRecord& seed,
                                   const CalibrationOptions& opts = {});

/// Step 1, then the ALC tone from the perturbative cancellation conditions,
/// then step 3.
CalibrationRecord calibrate_analytic_seeded(const TransmonParams& q, double t_gate,
                                            const CalibrationOptions& opts = {});

const char* to_string(CalibrationMethod m);
const char* to_string(PeakType t);
CalibrationMethod calibration_method_from_string(const std::string& s);

}  // namespace alc
