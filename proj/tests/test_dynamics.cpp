#include <gtest/gtest.h>

#include <cmath>

#include "alc/dynamics.hpp"
#include "alc/pulse.hpp"
#include "oracles.hpp"

using namespace alc;

namespace {

// Envelope-figure device and a DRAG+ALC pulse near its optimum.
const TransmonParams kFig{6.0, 0.2, 4};

PulseParams fig_pulse() {
  PulseParams p = PulseParams::nominal(kFig, 9.5);
  p.delta_main = -0.004;
  p.bind_notch(kFig.eta_ghz, NotchBinding::follow_detuning);
  p.a_alc = -0.004;
  p.delta_alc = -0.205;
  return p;
}

PulseParams zero_drive(double t_gate) {
  PulseParams p = PulseParams::nominal(kFig, t_gate);
  p.a_main = 0.0;
  return p;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Hamiltonian, ZeroDriveIsKerrDiagonal) {
  const auto ops = build_operators(kFig);
  const CMatrix h = hamiltonian_at(0.3, zero_drive(10.0), ops, kFig);
  CMatrix want = CMatrix::Zero(4, 4);
  want.diagonal() << 0.0, 0.0, -0.2, -0.6;
  EXPECT_LT(max_abs_diff(h, want), 1e-15);
}

TEST(Hamiltonian, OutsideWindowOnlyKerrRemains) {
  const auto ops = build_operators(kFig);
  const CMatrix h = hamiltonian_at(6.0, fig_pulse(), ops, kFig);
  EXPECT_EQ(h(0, 1), Complex(0.0));
  EXPECT_DOUBLE_EQ(h(3, 3).real(), -0.6);
}

TEST(Hamiltonian, HermitianWithLadderElements) {
  const auto ops = build_operators(kFig);
  auto p = fig_pulse();
  p.phi_alc = 0.7;
  for (double t : linspace(-4.75, 4.75, 39)) {
    const CMatrix h = hamiltonian_at(t, p, ops, kFig);
    EXPECT_EQ((h - h.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    const Complex omega = main_envelope(t, p) + alc_envelope(t, p);
    EXPECT_NEAR(std::abs(h(2, 1) - std::sqrt(2.0) / 2.0 * std::conj(omega)), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(h(1, 2) - std::sqrt(2.0) / 2.0 * omega), 0.0, 1e-16);
  }
  EXPECT_THROW(hamiltonian_at(0.0, p, build_operators({6.0, 0.2, 5}), kFig), InvalidParameter);
}

TEST(Hamiltonian, AgreesWithOracle) {
  const auto ops = build_operators(kFig);
  const auto p = fig_pulse();
  const oracle::Pulse o{p.t_gate, p.a_main, p.delta_main, p.alpha, p.big_delta, p.a_alc, p.delta_alc, p.phi_alc};
  for (double t : linspace(-4.7, 4.7, 21)) {
    EXPECT_LT(max_abs_diff(hamiltonian_at(t, p, ops, kFig), oracle::hamiltonian(t, o, kFig.eta_ghz, 4)), 1e-15);
  }
}

TEST(Propagate, ZeroDriveKeepsEigenstate) {
  const auto out = propagate(QuantumState::basis(4, 1), zero_drive(10.0), kFig);
  EXPECT_NEAR(out.populations()(1), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(out.amplitudes(1) - 1.0), 0.0, 1e-10);  // E_1 = 0
}

// Two levels cannot be represented by the library device type, so the exact
// Rabi rotation is checked on the oracle integrator.
TEST(Propagate, TwoLevelRabiIsExactOnOracle) {
  const double T = 10.0;
  const oracle::Pulse o{T, 1.0 / (4 * T), 0.0, 0.0, -0.2, 0.0, -0.2, 0.0};
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2);
  psi(0) = 1.0;
  const auto out = oracle::rk4(psi, o, 0.2, 1e-3);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(out(0) - s), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(out(1) - Complex(0, -s)), 0.0, 1e-9);
}

TEST(Propagate, RejectsBadInputs) {
  QuantumState s = QuantumState::basis(4, 0);
  s.amplitudes *= 1.1;
  EXPECT_THROW(propagate(s, fig_pulse(), kFig), InvalidParameter);
  EXPECT_THROW(propagate(QuantumState::basis(3, 0), fig_pulse(), kFig), InvalidParameter);
}

TEST(Propagate, NormConservedAlongTrajectory) {
  const auto p = fig_pulse();
  const auto times = linspace(-4.75, 4.75, 191);
  for (int n : {0, 1}) {
    Trajectory traj;
    const auto out = propagate(QuantumState::basis(4, n), p, kFig, {}, times, &traj);
    ASSERT_EQ(traj.t.size(), times.size());
    for (const auto& pops : traj.populations) EXPECT_LT(std::abs(pops.sum() - 1.0), 1e-9);
    EXPECT_LT(std::abs(out.norm() - 1.0), 1e-9);
  }
}

TEST(Propagate, HalvingStepCeilingIsConverged) {
  const auto p = fig_pulse();
  IntegratorOptions fine;
  fine.dt_max = 0.0025;
  for (int n : {0, 1}) {
    const RVector a = propagate(QuantumState::basis(4, n), p, kFig).populations();
    const RVector b = propagate(QuantumState::basis(4, n), p, kFig, fine).populations();
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Propagate, MatchesFixedStepOracle) {
  const auto p = fig_pulse();
  const oracle::Pulse o{p.t_gate, p.a_main, p.delta_main, p.alpha, p.big_delta, p.a_alc, p.delta_alc, p.phi_alc};
  for (int n : {0, 1}) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(n) = 1.0;
    const auto want = oracle::rk4(psi, o, kFig.eta_ghz, 1e-4);
    const auto got = propagate(QuantumState::basis(4, n), p, kFig);
    for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(got.amplitudes(k) - want(k)), 1e-8) << n << "->" << k;
  }
}

TEST(GateUnitary, FreeKerrEvolution) {
  const double T = 7.3;
  const CMatrix u = gate_unitary(zero_drive(T), kFig);
  const double eta = kFig.eta_ghz;
  CMatrix want = CMatrix::Zero(4, 4);
  want.diagonal() << 1.0, 1.0, std::polar(1.0, kTwoPi * eta * T), std::polar(1.0, 3.0 * kTwoPi * eta * T);
  EXPECT_LT(max_abs_diff(u, want), 1e-9);
}

TEST(GateUnitary, UnitaryAndInvertible) {
  const CMatrix u = gate_unitary(fig_pulse(), kFig);
  const CMatrix id = CMatrix::Identity(4, 4);
  EXPECT_LT((u.adjoint() * u - id).norm(), 1e-9);
  EXPECT_LT(max_abs_diff(u * u.inverse(), id), 1e-8);
  IntegratorOptions fine;
  fine.dt_max = 0.0025;
  EXPECT_LT(max_abs_diff(u, gate_unitary(fig_pulse(), kFig, fine)), 1e-9);
}

TEST(GateUnitary, VirtualZActsAfterDrive) {
  auto p = fig_pulse();
  const CMatrix u0 = gate_unitary(p, kFig);
  p.z_correction = 0.37;
  EXPECT_LT(max_abs_diff(gate_unitary(p, kFig), virtual_z(4, 0.37) * u0), 1e-15);
}

TEST(GateMetrics, PerfectRotationEmbedded) {
  CMatrix cols = CMatrix::Zero(4, 2);
  cols.topRows(2) = target_unitary(GateTarget::x90);
  const auto s = summarize_gate(cols, GateTarget::x90);
  EXPECT_NEAR(s.comp_fidelity, 1.0, 1e-15);
  EXPECT_EQ(s.leakage, 0.0);
  EXPECT_NEAR(s.subspace_fidelity, 1.0, 1e-15);

  cols.topRows(2) = target_unitary(GateTarget::y90);
  EXPECT_NEAR(summarize_gate(cols, GateTarget::y90).comp_fidelity, 1.0, 1e-15);
  EXPECT_LT(summarize_gate(cols, GateTarget::x90).comp_fidelity, 0.9);
}

TEST(GateMetrics, GlobalPhaseIsIgnored) {
  CMatrix cols = CMatrix::Zero(4, 2);
  cols.topRows(2) = std::polar(1.0, 1.1) * target_unitary(GateTarget::x90);
  EXPECT_NEAR(summarize_gate(cols, GateTarget::x90).comp_fidelity, 1.0, 1e-15);
}

TEST(GateMetrics, InvariantsAndFastPath) {
  const auto p = fig_pulse();
  const auto r = gate_metrics(p, kFig);
  ASSERT_EQ(r.per_input.size(), 6u);
  EXPECT_NEAR(r.summary.populations.sum(), 1.0, 1e-9);
  EXPECT_GE(r.summary.leakage, 0.0);
  EXPECT_LE(r.summary.comp_fidelity, 1.0);
  EXPECT_NEAR(r.summary.leakage, r.summary.p2() + r.summary.p3(), 1e-18);
  const auto fast = gate_summary(p, kFig);
  EXPECT_NEAR(fast.leakage, r.summary.leakage, 1e-12);
  EXPECT_NEAR(fast.comp_fidelity, r.summary.comp_fidelity, 1e-12);
  for (const auto& c : r.per_input) EXPECT_NEAR(c.final_state.norm(), 1.0, 1e-9);
}

TEST(GateMetrics, TruncationAdequacy) {
  for (double T : {8.0, 10.0, 13.0}) {
    for (double eta : {0.158, 0.196}) {
      const TransmonParams q4{6.0, eta, 4}, q6{6.0, eta, 6};
      const auto p = PulseParams::nominal(q4, T);
      const double l4 = gate_summary(p, q4).leakage;
      const double l6 = gate_summary(p, q6).leakage;
      EXPECT_LT(std::abs(l6 - l4) / l4, 0.1) << "T=" << T << " eta=" << eta;
    }
  }
}

TEST(Decoherence, CoherenceFloor) {
  EXPECT_NEAR(decoherence_limited_error(10.0, 101.0, 109.0), 6.3584e-5, 1e-8);
  EXPECT_EQ(decoherence_limited_error(10.0, INFINITY, INFINITY), 0.0);
  EXPECT_DOUBLE_EQ(decoherence_limited_error(20.0, 80.0, 50.0), 2.0 * decoherence_limited_error(10.0, 80.0, 50.0));
  EXPECT_THROW(decoherence_limited_error(10.0, 0.0, 100.0), InvalidParameter);
  EXPECT_THROW(decoherence_limited_error(10.0, 100.0, -1.0), InvalidParameter);
}
