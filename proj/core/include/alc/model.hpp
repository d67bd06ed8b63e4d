#pragma once

// Core value types shared across the library.
//
// Units: frequencies and drive amplitudes in GHz, times in ns, phases in
// radians. The Schrodinger equation carries an explicit 2*pi, i.e.
// i dpsi/dt = 2*pi*H(t)*psi with H in GHz.

#include <complex>
#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace alc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised for parameter sets that violate a documented invariant.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Device constants of the transmon, modelled as a Kerr oscillator
/// H/h = f10 n - (eta/2) a^dag^2 a^2 truncated to `levels` Fock states.
struct TransmonParams {
  double f10_ghz = 6.0;
  double eta_ghz = 0.2;
  int levels = 4;

  void validate() const;
  bool operator==(const TransmonParams&) const = default;
};

/// Reads `key = value` (or `key: value`) lines with keys f10_ghz, eta_ghz,
/// levels. Blank lines and lines starting with '#' are ignored. Missing
/// keys keep the defaults of TransmonParams.
TransmonParams load_transmon_config(const std::filesystem::path& path);
TransmonParams parse_transmon_config(const std::string& text);

struct LadderOperators {
  CMatrix a;
  CMatrix a_dagger;
  RVector number;  // n
  RVector kerr;    // -eta * n(n-1)/2, the rotating-frame level energies

  int dimension() const { return static_cast<int>(number.size()); }
};

LadderOperators build_operators(const TransmonParams& q);

/// Complex amplitudes over Fock levels |0>..|d-1>.
struct QuantumState {
  CVector amplitudes;

  static QuantumState basis(int levels, int n);
  /// (c0 |0> + c1 |1>) normalised and embedded in `levels` levels.
  static QuantumState qubit(int levels, Complex c0, Complex c1);

  int dimension() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
  RVector populations() const { return amplitudes.cwiseAbs2(); }
  /// Sum of populations in levels >= 2.
  double leakage() const;

  bool operator==(const QuantumState& o) const {
    return amplitudes.size() == o.amplitudes.size() && amplitudes == o.amplitudes;
  }
};

/// How the DRAG notch parameter Delta tracks the main detuning during
/// calibration.
enum class NotchBinding {
  follow_detuning,  // Delta = -(eta + delta_main)
  fixed_eta,        // Delta = -eta
  free,             // never rebound
};

/// Drive-shape parameters of one pi/2 gate: a DRAG-shaped primary drive and
/// an optional leakage-cancellation tone.
struct PulseParams {
  double t_gate = 10.0;       // ns
  double a_main = 0.025;      // GHz
  double delta_main = 0.0;    // GHz
  double alpha = 1.0;         // DRAG coefficient
  double big_delta = -0.2;    // DRAG notch parameter Delta (GHz)
  double a_alc = 0.0;         // GHz
  double delta_alc = -0.2;    // GHz
  double phi_alc = 0.0;       // rad
  double z_correction = 0.0;  // post-gate virtual-Z angle (rad)

  void validate() const;
  bool operator==(const PulseParams&) const = default;

  /// Nominal DRAG-only pi/2 pulse: A_main = 1/(4 t_gate), alpha = 1,
  /// Delta = -eta, ALC tone parked at -eta with zero amplitude.
  static PulseParams nominal(const TransmonParams& q, double t_gate);

  /// Re-applies the notch binding after delta_main changed.
  void bind_notch(double eta, NotchBinding binding);
};

}  // namespace alc
