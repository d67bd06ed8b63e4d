#pragma once

// Rotating-frame gate dynamics of the driven Kerr oscillator.
//
//   H(t)/h = -(eta/2) a^dag^2 a^2 + 1/2 Omega(t) a + 1/2 Omega(t)^* a^dag
//   i dpsi/dt = 2 pi H(t) psi
//
// with Omega = Omega_main + Omega_alc. Propagation runs over the pulse
// window [-t_gate/2, t_gate/2] using an embedded Dormand-Prince 5(4) pair
// with a hard step ceiling.

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "alc/model.hpp"

namespace alc {

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double dt_max = 0.005;  // ns
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
  double time;
};

enum class GateTarget { x90, y90 };

/// Unit phase applied to the composite envelope so a pulse calibrated as
/// X/2 produces the requested rotation axis.
Complex drive_phase(GateTarget target);
/// Ideal 2x2 target unitary.
Eigen::Matrix2cd target_unitary(GateTarget target);

CMatrix hamiltonian_at(double t, const PulseParams& p, const LadderOperators& ops,
                       const TransmonParams& q, Complex phase = 1.0);

/// Populations sampled during propagation.
struct Trajectory {
  std::vector<double> t;
  std::vector<RVector> populations;
};

/// Evolves `initial` across the pulse window. If `sample_times` is non-empty
/// (each time inside the window, ascending), populations at those instants are
/// written to `trajectory`.
QuantumState propagate(const QuantumState& initial, const PulseParams& p, const TransmonParams& q,
                       const IntegratorOptions& opts = {}, std::span<const double> sample_times = {},
                       Trajectory* trajectory = nullptr, Complex phase = 1.0);

/// Raw propagator columns for the given initial basis states (d x columns.size()).
CMatrix propagate_columns(const PulseParams& p, const TransmonParams& q, std::span<const int> columns,
                          const IntegratorOptions& opts = {}, Complex phase = 1.0);

/// Virtual Z = exp(-i phi n) on all levels.
CMatrix virtual_z(int levels, double phi);

/// Full d x d gate: post-gate virtual Z applied after the drive propagator.
CMatrix gate_unitary(const PulseParams& p, const TransmonParams& q, const IntegratorOptions& opts = {},
                     GateTarget target = GateTarget::x90);

/// Metrics averaged over the six cardinal inputs |0>,|1>,|0>+-|1>,|0>+-i|1>.
struct GateSummary {
  RVector populations;           // mean level populations
  double leakage = 0.0;          // mean sum_{n>=2} p_n
  double comp_fidelity = 0.0;    // mean |<target|psi>|^2
  double subspace_fidelity = 0.0;  // same, after projecting onto {|0>,|1>} and renormalising

  double p2() const { return populations.size() > 2 ? populations(2) : 0.0; }
  double p3() const { return populations.size() > 3 ? populations(3) : 0.0; }
  double comp_error() const { return 1.0 - comp_fidelity; }
  double subspace_error() const { return 1.0 - subspace_fidelity; }
};

struct CardinalOutcome {
  std::string label;
  QuantumState final_state;
  double fidelity = 0.0;
  double leakage = 0.0;
};

struct GateResult {
  GateSummary summary;
  std::vector<CardinalOutcome> per_input;
  CMatrix unitary;  // d x d including the virtual Z
};

/// Cardinal-state metrics computed from the first two columns of a gate
/// (d x 2 block, virtual Z already applied).
GateSummary summarize_gate(const CMatrix& comp_columns, GateTarget target);

/// Fast path used by optimisers: propagates only |0> and |1>.
GateSummary gate_summary(const PulseParams& p, const TransmonParams& q, GateTarget target = GateTarget::x90,
                         const IntegratorOptions& opts = {});

GateResult gate_metrics(const PulseParams& p, const TransmonParams& q, GateTarget target = GateTarget::x90,
                        const IntegratorOptions& opts = {});

/// Coherence floor t_gate/(3 T1) + t_gate/(3 T_phi); t_gate in ns, T1 and
/// T_phi in microseconds. Infinite times contribute zero.
double decoherence_limited_error(double t_gate_ns, double t1_us, double tphi_us);

}  // namespace alc
