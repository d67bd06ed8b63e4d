#include "alc/calibration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "alc/analytic.hpp"
#include "alc/pulse.hpp"
#include "parallel.hpp"

namespace alc {

// ---------------------------------------------------------------------------
// REF

RefSimulator::RefSimulator(const PulseParams& p, const TransmonParams& q, const RefOptions& opts)
    : gate_(gate_unitary(p, q, opts.integrator, opts.target)), device_(q), opts_(opts) {
  if (opts.shots < 0) throw InvalidParameter("shots must be non-negative");
}

CMatrix RefSimulator::idle(double t_delay) const {
  const int d = device_.levels;
  CVector phases(d);
  for (int n = 0; n < d; ++n) {
    double angle = 0.0;
    if (opts_.delay == DelayMode::free_evolution) {
      // exp(-i 2 pi E_n t) with E_n = -eta n(n-1)/2
      angle = kTwoPi * device_.eta_ghz * 0.5 * n * (n - 1) * t_delay;
    } else {
      angle = kTwoPi * device_.eta_ghz * n * t_delay;
    }
    phases(n) = std::polar(1.0, angle);
  }
  return phases.asDiagonal();
}

CVector RefSimulator::final_state(double t_delay, int n_reps) const {
  if (n_reps < 2) throw InvalidParameter("REF needs n_reps >= 2");
  if (!(t_delay >= 0.0)) throw InvalidParameter("t_delay must be non-negative");
  const CMatrix rep = idle(t_delay) * gate_ * gate_;
  CVector psi = CVector::Zero(device_.levels);
  psi(0) = 1.0;
  for (int r = 0; r < n_reps; ++r) psi = rep * psi;
  return psi;
}

double RefSimulator::leakage(double t_delay, int n_reps) const {
  const CVector psi = final_state(t_delay, n_reps);
  double s = 0.0;
  for (int n = 2; n < psi.size(); ++n) s += std::norm(psi(n));
  return std::clamp(s, 0.0, 1.0);
}

double RefSimulator::measure(double t_delay, int n_reps) const {
  const double p = leakage(t_delay, n_reps);
  if (opts_.shots == 0) return p;
  const auto bits = std::bit_cast<std::uint64_t>(t_delay);
  std::seed_seq seq{static_cast<std::uint32_t>(opts_.seed), static_cast<std::uint32_t>(opts_.seed >> 32),
                    static_cast<std::uint32_t>(bits), static_cast<std::uint32_t>(bits >> 32),
                    static_cast<std::uint32_t>(n_reps)};
  std::mt19937_64 rng(seq);
  std::binomial_distribution<int> dist(opts_.shots, p);
  return static_cast<double>(dist(rng)) / opts_.shots;
}

double ref_sequence(const PulseParams& p, const TransmonParams& q, double t_delay, int n_reps,
                    const RefOptions& opts) {
  if (n_reps < 2) throw InvalidParameter("REF needs n_reps >= 2");
  return RefSimulator(p, q, opts).measure(t_delay, n_reps);
}

std::vector<PredictedPeak> predict_peaks(double t_gate, double eta, int k_max) {
  if (!(t_gate > 0.0) || !(eta > 0.0)) throw InvalidParameter("t_gate and eta must be positive");
  std::vector<PredictedPeak> out;
  for (int k = 0; k <= k_max; ++k) {
    const double t = ((k + 0.5) / eta - 4.0 * t_gate) / 2.0;
    if (t < 0.0) continue;
    out.push_back({k, t, k % 2 == 0 ? PeakType::a : PeakType::b});
  }
  return out;
}

RefScan ref_scan(const PulseParams& p, const TransmonParams& q, double t_min, double t_max, int points, int n_reps,
                 const RefOptions& opts) {
  if (points < 2 || !(t_max > t_min) || t_min < 0.0) throw InvalidParameter("invalid REF delay grid");
  const RefSimulator sim(p, q, opts);
  RefScan scan;
  scan.n_reps = n_reps;
  scan.t_delay = linspace(t_min, t_max, points);
  scan.p2.reserve(points);
  for (double t : scan.t_delay) scan.p2.push_back(sim.measure(t, n_reps));

  const double eta = q.eta_ghz;
  const int k_max = static_cast<int>(std::ceil(eta * (4.0 * p.t_gate + 2.0 * t_max)));
  const double window = 0.25 / eta;
  for (const auto& pk : predict_peaks(p.t_gate, eta, k_max)) {
    if (pk.t_delay < t_min || pk.t_delay > t_max) continue;
    int best = -1;
    for (int i = 0; i < points; ++i) {
      if (std::abs(scan.t_delay[i] - pk.t_delay) > window) continue;
      if (best < 0 || scan.p2[i] > scan.p2[best]) best = i;
    }
    if (best < 0) continue;
    scan.peaks.push_back({pk.k, pk.type, pk.t_delay, scan.t_delay[best], scan.p2[best]});
  }
  return scan;
}

RefPeak refine_peak(const RefSimulator& sim, const PredictedPeak& guess, int n_reps) {
  const double half = 0.125 / sim.device().eta_ghz;
  const double lo = std::max(0.0, guess.t_delay - half);
  const double hi = guess.t_delay + half;
  double fmin = 0.0;
  const double t = golden_section_min([&](double x) { return -sim.leakage(x, n_reps); }, lo, hi, 1e-6, &fmin);
  return {guess.k, guess.type, guess.t_delay, t, -fmin};
}

SegmentAmplitudes extract_segment_amplitudes(const CMatrix& gate) {
  if (gate.rows() < 3 || gate.cols() < 2) throw InvalidParameter("gate must include level |2>");
  const CMatrix pair = gate * gate;
  return {pair(2, 0), pair(2, 1) * pair(1, 0)};
}

PeakHeights peak_height_model(Complex c, Complex c_prime, int n) {
  const Complex i(0.0, 1.0);
  const double n2 = static_cast<double>(n) * n;
  return {n2 * std::norm(c - i * c_prime), n2 * std::norm(c + i * c_prime)};
}

namespace {

struct PeakDelays {
  double a = 0.0;
  double b = 0.0;
};

PeakDelays lowest_peak_delays(const PulseParams& p, const TransmonParams& q, int n_reps, const RefOptions& opts) {
  const RefSimulator sim(p, q, opts);
  const int k_max = static_cast<int>(std::ceil(4.0 * p.t_gate * q.eta_ghz)) + 4;
  std::optional<PredictedPeak> a, b;
  for (const auto& pk : predict_peaks(p.t_gate, q.eta_ghz, k_max)) {
    if (pk.type == PeakType::a && !a) a = pk;
    if (pk.type == PeakType::b && !b) b = pk;
  }
  return {refine_peak(sim, *a, n_reps).t_delay, refine_peak(sim, *b, n_reps).t_delay};
}

double combine(RefObjective obj, const PeakHeights& h) {
  switch (obj) {
    case RefObjective::a_only: return h.a;
    case RefObjective::b_only: return h.b;
    case RefObjective::mean_ab: break;
  }
  return 0.5 * (h.a + h.b);
}

}  // namespace

PeakHeights ref_peak_heights(const PulseParams& p, const TransmonParams& q, double a_delay, double b_delay, int n_reps,
                             const RefOptions& opts) {
  const RefSimulator sim(p, q, opts);
  return {sim.measure(a_delay, n_reps), sim.measure(b_delay, n_reps)};
}

AlcGridScan alc_grid_scan(const PulseParams& p, const TransmonParams& q, const std::vector<double>& a_alc,
                          const std::vector<double>& delta_alc, int n_reps, const AlcGridOptions& opts) {
  if (a_alc.empty() || delta_alc.empty()) throw InvalidParameter("alc_grid_scan: empty grid");
  AlcGridScan out;
  out.a_alc = a_alc;
  out.delta_alc = delta_alc;
  out.n_reps = n_reps;
  const auto delays = lowest_peak_delays(p, q, n_reps, opts.ref);
  out.a_peak_delay = delays.a;
  out.b_peak_delay = delays.b;

  auto objective = [&](double a, double d) {
    PulseParams trial = p;
    trial.a_alc = a;
    trial.delta_alc = d;
    if (a != 0.0 && d == 0.0) return std::numeric_limits<double>::infinity();
    return combine(opts.objective, ref_peak_heights(trial, q, delays.a, delays.b, n_reps, opts.ref));
  };

  const int na = static_cast<int>(a_alc.size());
  const int nd = static_cast<int>(delta_alc.size());
  out.objective.assign(static_cast<std::size_t>(na) * nd, 0.0);
  detail::parallel_for(na * nd, opts.parallel, [&](int idx) { out.objective[idx] = objective(a_alc[idx / nd], delta_alc[idx % nd]); });
  out.evaluations = na * nd;

  const auto it = std::min_element(out.objective.begin(), out.objective.end());
  const auto best = static_cast<int>(it - out.objective.begin());
  out.grid_a_alc = a_alc[best / nd];
  out.grid_delta_alc = delta_alc[best % nd];
  out.a_alc_opt = out.grid_a_alc;
  out.delta_alc_opt = out.grid_delta_alc;
  out.objective_opt = *it;

  if (opts.polish) {
    auto spacing = [](const std::vector<double>& g, double fallback) {
      return g.size() > 1 ? std::abs(g[1] - g[0]) : fallback;
    };
    const std::vector<double> scale = {spacing(a_alc, std::max(1e-4, 0.05 * std::abs(p.a_main))),
                                       spacing(delta_alc, 1e-3)};
    NelderMeadOptions nm;
    nm.max_evaluations = opts.polish_evaluations;
    nm.restarts = 1;
    nm.x_tol = 1e-4;
    nm.f_tol_rel = 1e-4;
    nm.keep_trace = false;
    const auto res = nelder_mead([&](std::span<const double> x) { return objective(x[0], x[1]); },
                                 {out.grid_a_alc, out.grid_delta_alc}, scale, nm);
    out.evaluations += res.evaluations;
    if (res.value < out.objective_opt) {
      out.a_alc_opt = res.x[0];
      out.delta_alc_opt = res.x[1];
      out.objective_opt = res.value;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Calibration

bool CalibrationRecord::converged() const {
  return std::all_of(stages.begin(), stages.end(), [](const CalibrationStage& s) { return s.converged; });
}

double stage_objective(const std::string& objective, const PulseParams& p, const TransmonParams& q,
                       const CalibrationOptions& opts) {
  const auto s = gate_summary(p, q, opts.target, opts.integrator);
  if (objective == "subspace_error") return s.subspace_error();
  if (objective == "comp_error") return s.comp_error();
  if (objective == "p2" || objective == "analytic") return s.p2();
  throw InvalidParameter("unknown stage objective: " + objective);
}

namespace {

class Calibrator {
 public:
  Calibrator(const TransmonParams& q, const CalibrationOptions& opts) : q_(q), opts_(opts) { q_.validate(); }

  CalibrationRecord& record() { return rec_; }

  void primary(PulseParams& p, const std::string& name) {
    const bool with_alpha = opts_.alpha_mode == AlphaMode::optimized;
    const std::string obj = with_alpha ? "comp_error" : "subspace_error";
    auto apply = [&](const PulseParams& base, std::span<const double> x) {
      PulseParams out = base;
      out.a_main = x[0];
      out.delta_main = x[1];
      out.z_correction = x[2];
      if (with_alpha) out.alpha = x[3];
      out.bind_notch(q_.eta_ghz, opts_.binding);
      return out;
    };
    const PulseParams base = p;
    std::vector<double> x0 = {p.a_main, p.delta_main, p.z_correction};
    std::vector<double> scale = {0.02 * p.a_main, 0.002, 0.02};
    if (with_alpha) {
      x0.push_back(p.alpha);
      scale.push_back(0.05);
    }
    const auto res = nelder_mead([&](std::span<const double> x) { return evaluate(obj, apply(base, x)); }, x0, scale,
                                 opts_.primary);
    p = apply(base, res.x);
    finish_stage(name, obj, p, res);
  }

  void alc_direct(PulseParams& p, const std::string& name) {
    auto apply = [&](const PulseParams& base, std::span<const double> x) {
      PulseParams out = base;
      out.a_alc = x[0];
      out.delta_alc = x[1];
      return out;
    };
    const PulseParams base = p;
    const std::vector<double> x0 = {-0.15 * p.a_main, -q_.eta_ghz};
    const std::vector<double> scale = {0.05 * p.a_main, 0.01};
    const auto res = nelder_mead(
        [&](std::span<const double> x) {
          if (x[1] == 0.0) return std::numeric_limits<double>::infinity();
          return evaluate("p2", apply(base, x));
        },
        x0, scale, opts_.alc);
    p = apply(base, res.x);
    finish_stage(name, "p2", p, res);
  }

  void alc_ref(PulseParams& p, const std::string& name) {
    const int n = std::max(2, opts_.ref_grid_points);
    std::vector<double> a_grid, d_grid;
    for (double r : linspace(-0.3, 0.0, n)) a_grid.push_back(r * p.a_main);
    for (double d : linspace(-0.02, 0.02, n)) d_grid.push_back(-q_.eta_ghz + d);
    AlcGridOptions g = opts_.ref_grid;
    g.ref.target = opts_.target;
    g.ref.integrator = opts_.integrator;
    const auto scan = alc_grid_scan(p, q_, a_grid, d_grid, opts_.ref_n_reps, g);
    p.a_alc = scan.a_alc_opt;
    p.delta_alc = scan.delta_alc_opt;
    evals_ += scan.evaluations;
    rec_.trace.push_back({name, evals_, scan.objective_opt});
    rec_.stages.push_back({name, "ref_mean_ab", p, summary(p), scan.evaluations, true, "grid scan"});
  }

  void alc_analytic(PulseParams& p, const std::string& name);

  void joint(PulseParams& p, const std::string& name) {
    auto apply = [&](const PulseParams& base, std::span<const double> x) {
      PulseParams out = base;
      out.a_main = x[0];
      out.delta_main = x[1];
      out.z_correction = x[2];
      out.a_alc = x[3];
      out.delta_alc = x[4];
      out.bind_notch(q_.eta_ghz, opts_.binding);
      return out;
    };
    const PulseParams base = p;
    const std::vector<double> x0 = {p.a_main, p.delta_main, p.z_correction, p.a_alc, p.delta_alc};
    const std::vector<double> scale = {0.01 * p.a_main, 0.001, 0.01, 0.01 * p.a_main, 0.003};
    const auto res = nelder_mead(
        [&](std::span<const double> x) {
          if (x[4] == 0.0) return std::numeric_limits<double>::infinity();
          return evaluate("comp_error", apply(base, x));
        },
        x0, scale, opts_.joint);
    p = apply(base, res.x);
    finish_stage(name, "comp_error", p, res);
  }

  GateSummary summary(const PulseParams& p) const { return gate_summary(p, q_, opts_.target, opts_.integrator); }

  void finalize(const PulseParams& p, CalibrationMethod m) {
    rec_.method = m;
    rec_.device = q_;
    rec_.params = p;
    rec_.metrics = summary(p);
  }

  void seed_from(const CalibrationRecord& seed) {
    rec_.stages = seed.stages;
    rec_.trace = seed.trace;
    evals_ = seed.evaluations();
  }

 private:
  double evaluate(const std::string& obj, const PulseParams& p) const {
    try {
      p.validate();
      return stage_objective(obj, p, q_, opts_);
    } catch (const InvalidParameter&) {
      return std::numeric_limits<double>::infinity();
    }
  }

  void finish_stage(const std::string& name, const std::string& obj, const PulseParams& p, const MinimizeResult& res) {
    for (const auto& e : res.trace) rec_.trace.push_back({name, evals_ + e.evaluation, e.objective});
    evals_ += res.evaluations;
    rec_.stages.push_back({name, obj, p, summary(p), res.evaluations, res.converged, res.message});
  }

  TransmonParams q_;
  CalibrationOptions opts_;
  CalibrationRecord rec_;
  int evals_ = 0;
};

void Calibrator::alc_analytic(PulseParams& p, const std::string& name) {
  SolveOptions so;
  so.a_main = p.a_main;
  const auto sol = solve_conditions(p.t_gate, q_.eta_ghz, so);
  p.a_alc = sol.a_alc;
  p.delta_alc = sol.delta_alc;
  p.phi_alc = 0.0;
  const double value = evaluate("analytic", p);
  ++evals_;
  rec_.trace.push_back({name, evals_, value});
  rec_.stages.push_back({name, "analytic", p, summary(p), 1, true, to_string(sol.method)});
}

PulseParams starting_pulse(const TransmonParams& q, double t_gate, const CalibrationOptions& opts) {
  PulseParams p = PulseParams::nominal(q, t_gate);
  if (opts.alpha_mode == AlphaMode::off) p.alpha = 0.0;
  p.bind_notch(q.eta_ghz, opts.binding);
  p.validate();
  return p;
}

}  // namespace

CalibrationRecord calibrate_iterative(const TransmonParams& q, double t_gate, const CalibrationOptions& opts) {
  Calibrator cal(q, opts);
  PulseParams p = starting_pulse(q, t_gate, opts);
  cal.primary(p, "primary");
  if (opts.enable_alc) {
    if (opts.step2 == Step2Mode::ref) {
      cal.alc_ref(p, "alc");
    } else {
      cal.alc_direct(p, "alc");
    }
    cal.primary(p, "primary_with_alc");
  }
  cal.finalize(p, CalibrationMethod::iterative);
  return cal.record();
}

CalibrationRecord calibrate_global(const TransmonParams& q, double t_gate, const CalibrationRecord& seed,
                                   const CalibrationOptions& opts) {
  if (!(std::abs(seed.params.t_gate - t_gate) < 1e-12)) throw InvalidParameter("seed record has a different t_gate");
  Calibrator cal(q, opts);
  cal.seed_from(seed);
  PulseParams p = seed.params;
  cal.joint(p, "global");
  cal.finalize(p, CalibrationMethod::global);
  return cal.record();
}

CalibrationRecord calibrate_analytic_seeded(const TransmonParams& q, double t_gate, const CalibrationOptions& opts) {
  Calibrator cal(q, opts);
  PulseParams p = starting_pulse(q, t_gate, opts);
  cal.primary(p, "primary");
  cal.alc_analytic(p, "alc");
  cal.primary(p, "primary_with_alc");
  cal.finalize(p, CalibrationMethod::analytic_seeded);
  return cal.record();
}

const char* to_string(CalibrationMethod m) {
  switch (m) {
    case CalibrationMethod::iterative: return "iterative";
    case CalibrationMethod::global: return "global";
    case CalibrationMethod::analytic_seeded: return "analytic_seeded";
  }
  return "?";
}

const char* to_string(PeakType t) { return t == PeakType::a ? "A" : "B"; }

CalibrationMethod calibration_method_from_string(const std::string& s) {
  if (s == "iterative") return CalibrationMethod::iterative;
  if (s == "global") return CalibrationMethod::global;
  if (s == "analytic" || s == "analytic_seeded") return CalibrationMethod::analytic_seeded;
  throw InvalidParameter("unknown calibration method: " + s);
}

}  // namespace alc
