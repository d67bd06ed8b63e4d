#include "alc/dynamics.hpp"

#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "alc/pulse.hpp"

namespace alc {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<Complex>;

// Right-hand side for k columns stacked column-major: dpsi/dt = -i 2 pi H psi.
// H is tridiagonal: kerr on the diagonal, Omega/2 sqrt(n) above, conj below.
struct Schrodinger {
  const PulseParams& p;
  RVector kerr;
  std::vector<double> sqrt_n;
  int d;
  int k;
  Complex phase;

  void operator()(const State& x, State& dxdt, double t) const {
    const Complex omega = (main_envelope(t, p) + alc_envelope(t, p)) * phase;
    const Complex half = 0.5 * omega;
    const Complex half_c = std::conj(half);
    const Complex mi2pi(0.0, -kTwoPi);
    for (int c = 0; c < k; ++c) {
      const Complex* psi = x.data() + c * d;
      Complex* out = dxdt.data() + c * d;
      for (int n = 0; n < d; ++n) {
        Complex h = kerr(n) * psi[n];
        if (n + 1 < d) h += half * sqrt_n[n + 1] * psi[n + 1];
        if (n > 0) h += half_c * sqrt_n[n] * psi[n - 1];
        out[n] = mi2pi * h;
      }
    }
  }
};

// Advances x from t0 to t1 with the controlled DOPRI5 stepper.
template <class Controlled>
void advance(Controlled& stepper, const Schrodinger& rhs, State& x, double& t, double t1, double& dt) {
  constexpr int kMaxTries = 1000000;
  int tries = 0;
  while (t1 - t > 1e-13 * std::max(1.0, std::abs(t1))) {
    double step = std::min(dt, t1 - t);
    const bool clipped = step < dt;
    const double saved_dt = dt;
    double trial = step;
    const auto res = stepper.try_step(rhs, x, t, trial);
    if (res == odeint::success) {
      dt = clipped ? saved_dt : trial;
    } else {
      dt = trial;
      if (dt < 1e-12) throw IntegrationError("step size underflow at t = " + std::to_string(t) + " ns", t);
    }
    if (++tries > kMaxTries) throw IntegrationError("step budget exhausted at t = " + std::to_string(t) + " ns", t);
  }
  t = t1;
}

Schrodinger make_rhs(const PulseParams& p, const TransmonParams& q, int k, Complex phase) {
  const auto ops = build_operators(q);
  Schrodinger rhs{p, ops.kerr, {}, q.levels, k, phase};
  rhs.sqrt_n.resize(q.levels);
  for (int n = 0; n < q.levels; ++n) rhs.sqrt_n[n] = std::sqrt(static_cast<double>(n));
  return rhs;
}

State evolve(const PulseParams& p, const TransmonParams& q, State x, int k, const IntegratorOptions& opts,
             Complex phase, std::span<const double> sample_times, Trajectory* traj) {
  p.validate();
  if (!(opts.dt_max > 0.0)) throw InvalidParameter("dt_max must be positive");
  const auto rhs = make_rhs(p, q, k, phase);
  auto stepper = odeint::make_controlled(opts.abs_tol, opts.rel_tol, opts.dt_max,
                                         odeint::runge_kutta_dopri5<State>());
  double t = -0.5 * p.t_gate;
  const double t_end = 0.5 * p.t_gate;
  double dt = std::min(opts.dt_max, 1e-3);
  auto record = [&](double when) {
    if (!traj) return;
    RVector pops = RVector::Zero(q.levels);
    for (int n = 0; n < q.levels; ++n) pops(n) = std::norm(x[n]);
    traj->t.push_back(when);
    traj->populations.push_back(pops);
  };
  for (double ts : sample_times) {
    if (ts < t - 1e-12 || ts > t_end + 1e-12) throw InvalidParameter("sample time outside window or unsorted");
    if (ts > t) advance(stepper, rhs, x, t, ts, dt);
    record(ts);
  }
  advance(stepper, rhs, x, t, t_end, dt);
  return x;
}

}  // namespace

Complex drive_phase(GateTarget target) {
  return target == GateTarget::x90 ? Complex(1.0, 0.0) : Complex(0.0, -1.0);
}

Eigen::Matrix2cd target_unitary(GateTarget target) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  if (target == GateTarget::x90) {
    u << s, Complex(0, -s), Complex(0, -s), s;
  } else {
    u << s, -s, s, s;
  }
  return u;
}

CMatrix hamiltonian_at(double t, const PulseParams& p, const LadderOperators& ops, const TransmonParams& q,
                       Complex phase) {
  const int d = ops.dimension();
  if (d != q.levels) throw InvalidParameter("operator dimension does not match transmon levels");
  const Complex omega = (main_envelope(t, p) + alc_envelope(t, p)) * phase;
  CMatrix h = CMatrix::Zero(d, d);
  h.diagonal() = ops.kerr.cast<Complex>();
  h += 0.5 * omega * ops.a + 0.5 * std::conj(omega) * ops.a_dagger;
  return h;
}

QuantumState propagate(const QuantumState& initial, const PulseParams& p, const TransmonParams& q,
                       const IntegratorOptions& opts, std::span<const double> sample_times,
                       Trajectory* trajectory, Complex phase) {
  q.validate();
  if (initial.dimension() != q.levels) throw InvalidParameter("state dimension does not match transmon levels");
  if (std::abs(initial.norm() - 1.0) > 1e-9) throw InvalidParameter("initial state must be normalised");
  State x(initial.amplitudes.data(), initial.amplitudes.data() + q.levels);
  x = evolve(p, q, std::move(x), 1, opts, phase, sample_times, trajectory);
  QuantumState out;
  out.amplitudes = Eigen::Map<const CVector>(x.data(), q.levels);
  return out;
}

CMatrix propagate_columns(const PulseParams& p, const TransmonParams& q, std::span<const int> columns,
                          const IntegratorOptions& opts, Complex phase) {
  q.validate();
  const int d = q.levels;
  const int k = static_cast<int>(columns.size());
  State x(static_cast<std::size_t>(d * k), Complex{});
  for (int c = 0; c < k; ++c) {
    if (columns[c] < 0 || columns[c] >= d) throw InvalidParameter("column index out of range");
    x[c * d + columns[c]] = 1.0;
  }
  x = evolve(p, q, std::move(x), k, opts, phase, {}, nullptr);
  return Eigen::Map<const CMatrix>(x.data(), d, k);
}

CMatrix virtual_z(int levels, double phi) {
  CMatrix z = CMatrix::Zero(levels, levels);
  for (int n = 0; n < levels; ++n) z(n, n) = std::polar(1.0, -phi * n);
  return z;
}

CMatrix gate_unitary(const PulseParams& p, const TransmonParams& q, const IntegratorOptions& opts,
                     GateTarget target) {
  std::vector<int> cols(q.levels);
  for (int n = 0; n < q.levels; ++n) cols[n] = n;
  const CMatrix u = propagate_columns(p, q, cols, opts, drive_phase(target));
  return virtual_z(q.levels, p.z_correction) * u;
}

namespace {

struct Cardinal {
  const char* label;
  Complex c0;
  Complex c1;
};

const std::array<Cardinal, 6>& cardinals() {
  static const double s = 1.0 / std::sqrt(2.0);
  static const std::array<Cardinal, 6> c = {{
      {"0", 1.0, 0.0},
      {"1", 0.0, 1.0},
      {"+", s, s},
      {"-", s, -s},
      {"+i", s, Complex(0, s)},
      {"-i", s, Complex(0, -s)},
  }};
  return c;
}

GateSummary summarize_impl(const CMatrix& cols, GateTarget target, std::vector<CardinalOutcome>* per_input) {
  const int d = static_cast<int>(cols.rows());
  const Eigen::Matrix2cd ut = target_unitary(target);
  GateSummary s;
  s.populations = RVector::Zero(d);
  for (const auto& c : cardinals()) {
    const Eigen::Vector2cd in(c.c0, c.c1);
    const CVector out = cols.leftCols(2) * in;
    const Eigen::Vector2cd want = ut * in;
    const Complex overlap = want.dot(out.head(2));
    const double fid = std::norm(overlap);
    const double kept = out.head(2).squaredNorm();
    RVector pops = out.cwiseAbs2();
    const double leak = pops.tail(d - 2).sum();
    s.populations += pops;
    s.leakage += leak;
    s.comp_fidelity += fid;
    s.subspace_fidelity += kept > 0.0 ? fid / kept : 0.0;
    if (per_input) per_input->push_back({c.label, QuantumState{out}, fid, leak});
  }
  const double n = static_cast<double>(cardinals().size());
  s.populations /= n;
  s.leakage /= n;
  s.comp_fidelity /= n;
  s.subspace_fidelity /= n;
  return s;
}

}  // namespace

GateSummary summarize_gate(const CMatrix& comp_columns, GateTarget target) {
  if (comp_columns.cols() < 2 || comp_columns.rows() < 2) throw InvalidParameter("need at least a d x 2 block");
  return summarize_impl(comp_columns, target, nullptr);
}

GateSummary gate_summary(const PulseParams& p, const TransmonParams& q, GateTarget target,
                         const IntegratorOptions& opts) {
  static constexpr std::array<int, 2> kComp = {0, 1};
  const CMatrix u = propagate_columns(p, q, kComp, opts, drive_phase(target));
  return summarize_impl(virtual_z(q.levels, p.z_correction) * u, target, nullptr);
}

GateResult gate_metrics(const PulseParams& p, const TransmonParams& q, GateTarget target,
                        const IntegratorOptions& opts) {
  GateResult r;
  r.unitary = gate_unitary(p, q, opts, target);
  r.summary = summarize_impl(r.unitary.leftCols(2), target, &r.per_input);
  return r;
}

double decoherence_limited_error(double t_gate_ns, double t1_us, double tphi_us) {
  if (!(t_gate_ns >= 0.0)) throw InvalidParameter("t_gate must be non-negative");
  if (!(t1_us > 0.0) || !(tphi_us > 0.0)) throw InvalidParameter("T1 and T_phi must be positive");
  const double t1_ns = t1_us * 1e3;
  const double tphi_ns = tphi_us * 1e3;
  return t_gate_ns / (3.0 * t1_ns) + t_gate_ns / (3.0 * tphi_ns);
}

}  // namespace alc
