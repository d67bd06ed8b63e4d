#include "alc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "alc/optimize.hpp"
#include "parallel.hpp"

namespace alc {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::drag_fixed_alpha: return "drag_fixed_alpha";
    case Strategy::drag_opt_alpha: return "drag_opt_alpha";
    case Strategy::alc_no_drag: return "alc_no_drag";
    case Strategy::drag_alc_iterative: return "drag_alc_iterative";
    case Strategy::drag_alc_global: return "drag_alc_global";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& s) {
  for (auto st : all_strategies())
    if (s == to_string(st)) return st;
  throw InvalidParameter("unknown strategy: " + s);
}

std::vector<Strategy> all_strategies() {
  return {Strategy::drag_fixed_alpha, Strategy::drag_opt_alpha, Strategy::alc_no_drag, Strategy::drag_alc_iterative,
          Strategy::drag_alc_global};
}

std::vector<double> default_gate_times() {
  std::vector<double> out;
  for (int k = 0; k <= 16; ++k) out.push_back(8.0 + 0.5 * k);
  return out;
}

std::vector<double> SweepSpec::gate_times() const { return t_gate_ns.empty() ? default_gate_times() : t_gate_ns; }

void SweepSpec::validate() const {
  if (eta_ghz.empty()) throw InvalidParameter("sweep: eta list is empty");
  if (strategies.empty()) throw InvalidParameter("sweep: no strategies");
  for (double e : eta_ghz) TransmonParams{f10_ghz, e, levels}.validate();
  for (double t : gate_times())
    if (!(t > 0.0)) throw InvalidParameter("sweep: gate times must be positive");
  if (parallel < 1) throw InvalidParameter("sweep: parallel must be >= 1");
}

CalibrationRecord calibrate_strategy(const TransmonParams& q, double t_gate, Strategy s, const CalibrationOptions& base,
                                     const CalibrationRecord* iterative) {
  CalibrationOptions o = base;
  switch (s) {
    case Strategy::drag_fixed_alpha:
      o.enable_alc = false;
      o.alpha_mode = AlphaMode::fixed;
      return calibrate_iterative(q, t_gate, o);
    case Strategy::drag_opt_alpha:
      o.enable_alc = false;
      o.alpha_mode = AlphaMode::optimized;
      return calibrate_iterative(q, t_gate, o);
    case Strategy::alc_no_drag:
      o.enable_alc = true;
      o.alpha_mode = AlphaMode::off;
      return calibrate_iterative(q, t_gate, o);
    case Strategy::drag_alc_iterative:
      o.enable_alc = true;
      o.alpha_mode = AlphaMode::fixed;
      return calibrate_iterative(q, t_gate, o);
    case Strategy::drag_alc_global: {
      o.enable_alc = true;
      o.alpha_mode = AlphaMode::fixed;
      if (iterative) return calibrate_global(q, t_gate, *iterative, o);
      const auto seed = calibrate_iterative(q, t_gate, o);
      return calibrate_global(q, t_gate, seed, o);
    }
  }
  throw InvalidParameter("unknown strategy");
}

std::vector<SweepRow> run_strategy_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto times = spec.gate_times();
  const int nt = static_cast<int>(times.size());
  const int ns = static_cast<int>(spec.strategies.size());
  const int points = static_cast<int>(spec.eta_ghz.size()) * nt;
  std::vector<SweepRow> rows(static_cast<std::size_t>(points) * ns);

  // One job per (eta, t_gate) so the global strategy can reuse the
  // iterative record of the same point.
  detail::parallel_for(points, spec.parallel, [&](int job) {
    const double eta = spec.eta_ghz[job / nt];
    const double t = times[job % nt];
    const TransmonParams q{spec.f10_ghz, eta, spec.levels};
    std::optional<CalibrationRecord> iterative;
    for (int k = 0; k < ns; ++k) {
      SweepRow& row = rows[static_cast<std::size_t>(job) * ns + k];
      row.eta_ghz = eta;
      row.t_gate_ns = t;
      row.strategy = spec.strategies[k];
      try {
        const bool wants_iterative =
            row.strategy == Strategy::drag_alc_iterative || row.strategy == Strategy::drag_alc_global;
        CalibrationRecord rec;
        if (wants_iterative && !iterative) iterative = calibrate_strategy(q, t, Strategy::drag_alc_iterative, spec.calibration);
        if (row.strategy == Strategy::drag_alc_iterative) {
          rec = *iterative;
        } else if (row.strategy == Strategy::drag_alc_global) {
          rec = calibrate_strategy(q, t, row.strategy, spec.calibration, &*iterative);
        } else {
          rec = calibrate_strategy(q, t, row.strategy, spec.calibration);
        }
        row.params = rec.params;
        row.metrics = rec.metrics;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  });
  return rows;
}

PulseParams apply_frequency_shift(const PulseParams& p, double shift_ghz) {
  PulseParams out = p;
  out.delta_main -= shift_ghz;
  out.delta_alc -= shift_ghz;
  return out;
}

std::vector<RobustnessRow> run_robustness(const SweepSpec& spec, const std::vector<SweepRow>& calibrated) {
  spec.validate();
  if (spec.freq_shift_mhz.empty()) throw InvalidParameter("robustness: empty frequency-shift grid");
  const int nshift = static_cast<int>(spec.freq_shift_mhz.size());
  std::vector<RobustnessRow> out(calibrated.size() * nshift);
  detail::parallel_for(static_cast<int>(out.size()), spec.parallel, [&](int idx) {
    const SweepRow& src = calibrated[idx / nshift];
    RobustnessRow& row = out[idx];
    row.eta_ghz = src.eta_ghz;
    row.t_gate_ns = src.t_gate_ns;
    row.strategy = src.strategy;
    row.shift_mhz = spec.freq_shift_mhz[idx % nshift];
    if (!src.ok) {
      row.ok = false;
      row.error = "calibration failed: " + src.error;
      return;
    }
    try {
      const TransmonParams q{spec.f10_ghz, src.eta_ghz, spec.levels};
      row.params = apply_frequency_shift(src.params, 1e-3 * row.shift_mhz);
      row.metrics = row.shift_mhz == 0.0 ? src.metrics
                                         : gate_summary(row.params, q, spec.calibration.target, spec.calibration.integrator);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  return out;
}

std::vector<RobustnessRow> run_robustness(const SweepSpec& spec) {
  return run_robustness(spec, run_strategy_sweep(spec));
}

double find_notch(const PulseParams& p, double lo, double hi) {
  const auto grid = linspace(lo, hi, 401);
  const auto trace = analytic_spectrum(p, Drive::composite, grid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (std::abs(trace.values[i]) < std::abs(trace.values[best])) best = i;
  const double step = grid[1] - grid[0];
  auto mag = [&](double f) {
    const double fs[1] = {f};
    return std::abs(analytic_spectrum(p, Drive::composite, fs).values[0]);
  };
  return golden_section_min(mag, std::max(lo, grid[best] - step), std::min(hi, grid[best] + step), 1e-9);
}

std::vector<SpectrumReport> run_spectra_report(const std::vector<SweepRow>& rows, const SpectrumOptions& opts) {
  std::vector<SpectrumReport> out;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    SpectrumReport rep;
    rep.eta_ghz = r.eta_ghz;
    rep.t_gate_ns = r.t_gate_ns;
    rep.strategy = r.strategy;
    rep.leakage = r.leakage();
    const auto band = linspace(-opts.band_half_width_ghz, opts.band_half_width_ghz, opts.band_points);
    const auto zoom = linspace(-r.eta_ghz - opts.zoom_half_width_ghz, -r.eta_ghz + opts.zoom_half_width_ghz,
                               opts.zoom_points);
    rep.band = analytic_spectrum(r.params, Drive::composite, band);
    rep.zoom = analytic_spectrum(r.params, Drive::composite, zoom);
    rep.notch_offset_ghz = find_notch(r.params, zoom.front(), zoom.back());
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<SpectrumReport> run_spectra_report(double eta, const std::vector<double>& t_gates,
                                               const std::vector<Strategy>& strategies, const SpectrumOptions& opts,
                                               int parallel) {
  SweepSpec spec;
  spec.eta_ghz = {eta};
  spec.t_gate_ns = t_gates;
  spec.strategies = strategies;
  spec.parallel = parallel;
  return run_spectra_report(run_strategy_sweep(spec), opts);
}

}  // namespace alc
