#pragma once

// Three-level perturbative treatment of leakage cancellation.
//
// The |2> amplitude at the end of a pi/2 gate is
//
//   c2 = -i sqrt(2) pi int e^{i 2 pi eta (T/2 - t)} [Omega_main^* + Omega_alc^*] c1(t) dt
//
// with c1 following the ideal rotation. Requiring c2 = 0 for the inputs
// (|1> +- |0>)/sqrt(2) gives two real conditions on (A_alc, delta_alc):
//
//   -(pi/4T)(A_main/eta) I1 = (A_alc/delta_alc) J1(delta_alc)
//    (pi/4T)(A_main/eta) I2 = (A_alc/delta_alc) J2(delta_alc)
//
//   I1 = int_0^{T/2} F^2 cos(th/2) cos(2 pi eta t)      J1 = int_0^{T/2} F' sin(th/2) cos(2 pi (eta+delta) t)
//   I2 = int_0^{T/2} F^2 sin(th/2) sin(2 pi eta t)      J2 = int_0^{T/2} F' cos(th/2) sin(2 pi (eta+delta) t)
//
// where th is the antisymmetric part of the rotation angle. Envelopes use
// the same normalisation as the simulator (int F dt = T), so theta runs
// from 0 to pi/2 and A_main ~ 1/(4T).

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "alc/model.hpp"
#include "alc/quadrature.hpp"

namespace alc {

/// Rotation angle theta(t) = (pi/2T) int_{-T/2}^t F for the raised cosine.
struct RotationProfile {
  double t_gate = 10.0;

  double theta(double t) const;
  /// theta(t) - pi/4; odd in t.
  double theta_tilde(double t) const;
};

RotationProfile rotation_profile(double t_gate);

/// Initial states (|1> + |0>)/sqrt(2) (plus) and (|1> - |0>)/sqrt(2) (minus);
/// c1(t) = exp(-+ i theta(t)/2)/sqrt(2).
enum class CardinalProfile { plus, minus };

/// c2 at the end of the gate from the full expression above (general alpha,
/// Delta, delta_main, phi_alc), normalised so |c2|^2 is the |2> population for
/// the normalised input state.
Complex leakage_amplitude(const PulseParams& p, const TransmonParams& q, CardinalProfile profile,
                          const QuadratureOptions& opts = {});

/// Same amplitude after integrating the main-drive DRAG term by parts; only
/// valid for alpha = 1, Delta = -eta, delta_main = 0.
Complex leakage_amplitude_by_parts(const PulseParams& p, const TransmonParams& q, CardinalProfile profile,
                                   const QuadratureOptions& opts = {});

struct ConditionIntegrals {
  double i1 = 0.0;
  double i2 = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
};

ConditionIntegrals condition_integrals(double t_gate, double eta, double delta_alc,
                                       const QuadratureOptions& opts = {});

/// Residuals of the two cancellation conditions divided by
/// (pi/4T)(A_main/eta)|I1|.
std::array<double, 2> condition_residuals(double t_gate, double eta, double a_main, double a_alc, double delta_alc,
                                          const QuadratureOptions& opts = {});

enum class SolveMethod { exact_2x2_solve, bisection_fallback, closed_form };

struct AlcSolution {
  double a_alc = 0.0;
  double delta_alc = 0.0;
  double a_main = 0.0;
  std::array<double, 2> residuals{};
  SolveMethod method = SolveMethod::exact_2x2_solve;
  int iterations = 0;
};

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, std::array<double, 2> best) : std::runtime_error(what), best_residuals(best) {}
  std::array<double, 2> best_residuals;
};

struct SolveOptions {
  double a_main = 0.0;  // <= 0 selects 1/(4 t_gate)
  double tolerance = 1e-12;
  int max_iterations = 60;
  bool force_fallback = false;  // skip Newton (exercised by tests)
};

/// Solves both conditions with damped 2-D Newton seeded at the closed forms;
/// falls back to bracketing the reduced one-dimensional condition.
AlcSolution solve_conditions(double t_gate, double eta, const SolveOptions& opts = {});

/// A_alc with delta_alc ~ -eta: (pi A_main/4T) I1 / int_0^{T/2} F' sin(th/2).
double closed_form_a_alc(double t_gate, double eta, double a_main = 0.0);
/// delta_alc ~ -eta - I2 K1 / (I1 K2), K1 = int F' sin(th/2), K2 = int F' 2 pi t cos(th/2).
double closed_form_delta_alc(double t_gate, double eta);

/// One point of the optimal-parameter curves versus gate time.
struct OptimalParameterPoint {
  double t_gate = 0.0;
  double a_main = 0.0;
  double a_alc_exact = 0.0;
  double a_alc_closed = 0.0;
  double delta_alc_exact = 0.0;
  double delta_alc_closed = 0.0;
  SolveMethod method = SolveMethod::exact_2x2_solve;

  double ratio() const { return a_alc_exact / a_main; }
};

std::vector<OptimalParameterPoint> optimal_parameter_curve(double eta, const std::vector<double>& t_gates);

/// Envelope shape for the phase-optimality check; `theta_tilde` may be left
/// empty, in which case it is integrated numerically from `value`.
struct PulseShape {
  double t_gate = 10.0;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> theta_tilde;
};

PulseShape raised_cosine_shape(double t_gate);

struct PhiOptimalityReport {
  // Imaginary parts of the full-window condition integrals (left side: main
  // drive; right side: i * ALC integral), each divided by its magnitude.
  double main_plus = 0.0;
  double main_minus = 0.0;
  double alc_plus = 0.0;
  double alc_minus = 0.0;

  double worst() const;
};

PhiOptimalityReport phi_alc_optimality_check(const PulseShape& shape, double eta, double delta_alc,
                                             const QuadratureOptions& opts = {});
PhiOptimalityReport phi_alc_optimality_check(double t_gate, double eta);

const char* to_string(SolveMethod m);

}  // namespace alc
