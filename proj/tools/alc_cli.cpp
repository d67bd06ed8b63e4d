// alc: command-line front end for the leakage-cancellation toolkit.
//
//   alc envelope   --t-gate-ns 9.5 --eta-ghz 0.2
//   alc calibrate  --method iterative --eta-ghz 0.196 --t-gate-ns 9.75
//   alc ref        --n-reps 10
//   alc sweep      --eta-ghz 0.196 --t-gates 9,10,11 --parallel 4
//
// Every flag can also come from an INI/TOML file given with --config.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "alc/analytic.hpp"
#include "alc/calibration.hpp"
#include "alc/dynamics.hpp"
#include "alc/experiments.hpp"
#include "alc/io.hpp"
#include "alc/pulse.hpp"

namespace {

using namespace alc;

struct Common {
  double eta = 0.2;
  double f10 = 6.0;
  double t_gate = 10.0;
  int levels = 4;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int parallel = 1;
  std::string device_file;

  TransmonParams device() const {
    TransmonParams q{f10, eta, levels};
    if (!device_file.empty()) {
      q = load_transmon_config(device_file);
    }
    q.validate();
    return q;
  }
};

// Pulse overrides shared by envelope/spectrum/evolve/ref. Unset fields keep
// the nominal DRAG pulse.
struct PulseFlags {
  std::string record;
  std::optional<double> a_main;
  std::optional<double> delta_main_mhz;
  std::optional<double> alpha;
  std::optional<double> a_alc;
  std::optional<double> delta_alc_mhz;
  std::optional<double> phi_alc;
  std::optional<double> z;
  bool analytic_alc = false;

  void attach(CLI::App* app) {
    app->add_option("--record", record, "Load pulse parameters from a calibration record (JSON)");
    app->add_option("--a-main", a_main, "Main drive amplitude (GHz)");
    app->add_option("--delta-main-mhz", delta_main_mhz, "Main drive detuning (MHz)");
    app->add_option("--alpha", alpha, "DRAG coefficient");
    app->add_option("--a-alc", a_alc, "ALC amplitude (GHz)");
    app->add_option("--delta-alc-mhz", delta_alc_mhz, "ALC detuning (MHz)");
    app->add_option("--phi-alc", phi_alc, "ALC phase (rad)");
    app->add_option("--z-correction", z, "Post-gate virtual Z (rad)");
    app->add_flag("--analytic-alc", analytic_alc, "Set the ALC tone from the analytic cancellation conditions");
  }

  PulseParams build(const TransmonParams& q, double t_gate) const {
    PulseParams p = PulseParams::nominal(q, t_gate);
    if (!record.empty()) {
      std::ifstream in(record);
      if (!in) throw InvalidParameter("cannot open record " + record);
      const auto j = nlohmann::json::parse(in);
      p = (j.contains("params") ? j.at("params") : j).get<PulseParams>();
    }
    if (a_main) p.a_main = *a_main;
    if (delta_main_mhz) {
      p.delta_main = 1e-3 * *delta_main_mhz;
      p.bind_notch(q.eta_ghz, NotchBinding::follow_detuning);
    }
    if (alpha) p.alpha = *alpha;
    if (analytic_alc) {
      const auto sol = solve_conditions(p.t_gate, q.eta_ghz, {p.a_main});
      p.a_alc = sol.a_alc;
      p.delta_alc = sol.delta_alc;
    }
    if (a_alc) p.a_alc = *a_alc;
    if (delta_alc_mhz) p.delta_alc = 1e-3 * *delta_alc_mhz;
    if (phi_alc) p.phi_alc = *phi_alc;
    if (z) p.z_correction = *z;
    p.validate();
    return p;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidParameter("cannot open output " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void require_format(const std::string& f) {
  if (f != "csv" && f != "json") throw InvalidParameter("--format must be csv or json");
}

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<Strategy> out;
  for (const auto& n : names) out.push_back(strategy_from_string(n));
  return out.empty() ? all_strategies() : out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leakage-cancellation pulse toolkit for Kerr-oscillator transmons"};
  app.set_config("--config", "", "Read flags from an INI/TOML file");
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--eta-ghz", c.eta, "Anharmonicity (GHz)")->capture_default_str();
  app.add_option("--f10-ghz", c.f10, "Qubit frequency (GHz)")->capture_default_str();
  app.add_option("--t-gate-ns", c.t_gate, "Gate duration (ns)")->capture_default_str();
  app.add_option("--levels", c.levels, "Fock truncation")->capture_default_str();
  app.add_option("--device", c.device_file, "Device file with f10_ghz, eta_ghz, levels");
  app.add_option("--out", c.out, "Output file (default stdout)");
  app.add_option("--format", c.format, "csv or json")->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for the optional shot-noise layer");
  app.add_option("--parallel", c.parallel, "Worker threads")->capture_default_str();

  // envelope
  auto* env = app.add_subcommand("envelope", "Sampled envelope and lab-frame waveform");
  PulseFlags env_pulse;
  env_pulse.attach(env);
  double env_dt = 0.01;
  env->add_option("--dt", env_dt, "Sample step (ns)")->capture_default_str();

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "Envelope spectrum around f10");
  PulseFlags spec_pulse;
  spec_pulse.attach(spec);
  std::string which = "composite";
  double f_min = -1.0, f_max = 1.0, numeric_dt = 0.0;
  int f_points = 801;
  spec->add_option("--which", which, "main, alc or composite")->capture_default_str();
  spec->add_option("--f-min", f_min, "Lowest offset from f10 (GHz)")->capture_default_str();
  spec->add_option("--f-max", f_max, "Highest offset from f10 (GHz)")->capture_default_str();
  spec->add_option("--points", f_points)->capture_default_str();
  spec->add_option("--numeric-dt", numeric_dt, "Use the direct Fourier sum with this sample step (ns)");

  // evolve
  auto* evo = app.add_subcommand("evolve", "Level populations during the gate");
  PulseFlags evo_pulse;
  evo_pulse.attach(evo);
  std::string initial = "1";
  int evo_samples = 201;
  evo->add_option("--initial", initial, "0, 1, +, -, +i or -i")->capture_default_str();
  evo->add_option("--samples", evo_samples)->capture_default_str();

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "Calibrate a DRAG+ALC pulse");
  std::string method = "iterative", step2 = "direct";
  bool no_alc = false;
  cal->add_option("--method", method, "iterative, global or analytic")->capture_default_str();
  cal->add_option("--step2", step2, "ALC step objective: direct or ref")->capture_default_str();
  cal->add_flag("--no-alc", no_alc, "Stop after the primary-drive step");

  // ref
  auto* ref = app.add_subcommand("ref", "Ramsey error filter delay scan");
  PulseFlags ref_pulse;
  ref_pulse.attach(ref);
  int n_reps = 10, ref_points = 401, shots = 0;
  double t_min = 0.0, t_max = 15.0;
  bool virtual_z_delay = false;
  ref->add_option("--n-reps", n_reps)->capture_default_str();
  ref->add_option("--t-min", t_min, "Shortest delay (ns)")->capture_default_str();
  ref->add_option("--t-max", t_max, "Longest delay (ns)")->capture_default_str();
  ref->add_option("--points", ref_points)->capture_default_str();
  ref->add_option("--shots", shots, "Binomial shots per point (0 = exact)")->capture_default_str();
  ref->add_flag("--virtual-z-delay", virtual_z_delay, "Replace idles by virtual Z rotations");

  // sweep / robustness
  std::vector<double> etas, t_gates, shifts = {-1.0, -0.5, 0.0, 0.5, 1.0};
  std::vector<std::string> strategy_names;
  auto* sweep = app.add_subcommand("sweep", "Leakage versus gate time for each strategy");
  sweep->add_option("--etas", etas, "Anharmonicities (GHz); default --eta-ghz")->delimiter(',');
  sweep->add_option("--t-gates", t_gates, "Gate times (ns); default 8..16 step 0.5")->delimiter(',');
  sweep->add_option("--strategies", strategy_names, "Subset of strategies")->delimiter(',');
  auto* rob = app.add_subcommand("robustness", "Leakage under static frequency shifts");
  rob->add_option("--etas", etas)->delimiter(',');
  rob->add_option("--t-gates", t_gates)->delimiter(',');
  rob->add_option("--strategies", strategy_names)->delimiter(',');
  rob->add_option("--shifts-mhz", shifts, "Frequency shifts (MHz)")->delimiter(',');

  // params
  auto* par = app.add_subcommand("params", "Analytic optimal ALC parameters versus gate time");
  double p_min = 8.0, p_max = 16.0, p_step = 0.25;
  par->add_option("--t-min", p_min)->capture_default_str();
  par->add_option("--t-max", p_max)->capture_default_str();
  par->add_option("--t-step", p_step)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    require_format(c.format);
    if (c.parallel < 1) throw InvalidParameter("--parallel must be >= 1");
    const TransmonParams q = c.device();
    const bool json = c.format == "json";

    if (*env) {
      const auto p = env_pulse.build(q, c.t_gate);
      Output out(c.out);
      if (json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& s : sample_envelopes(p, env_dt)) {
          rows.push_back({{"t_ns", s.t},
                          {"re_composite", s.composite.real()},
                          {"im_composite", s.composite.imag()},
                          {"lab_frame", lab_frame_waveform(s.t, p, q)}});
        }
        out.stream() << dump_json({{"device", q}, {"params", p}, {"samples", rows}}) << '\n';
      } else {
        write_waveform_csv(out.stream(), p, q, env_dt);
      }
    } else if (*spec) {
      const auto p = spec_pulse.build(q, c.t_gate);
      const auto freqs = linspace(f_min, f_max, f_points);
      const Drive d = drive_from_string(which);
      const auto trace = numeric_dt > 0.0 ? numeric_spectrum(p, d, numeric_dt, freqs) : analytic_spectrum(p, d, freqs);
      Output out(c.out);
      if (json) {
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : trace.values) vals.push_back({v.real(), v.imag()});
        out.stream() << dump_json({{"params", p}, {"freqs_ghz", trace.freqs}, {"values", vals}}) << '\n';
      } else {
        write_spectrum_csv(out.stream(), trace);
      }
    } else if (*evo) {
      const auto p = evo_pulse.build(q, c.t_gate);
      const Complex i(0.0, 1.0);
      QuantumState psi;
      if (initial == "0") psi = QuantumState::basis(q.levels, 0);
      else if (initial == "1") psi = QuantumState::basis(q.levels, 1);
      else if (initial == "+") psi = QuantumState::qubit(q.levels, 1.0, 1.0);
      else if (initial == "-") psi = QuantumState::qubit(q.levels, 1.0, -1.0);
      else if (initial == "+i") psi = QuantumState::qubit(q.levels, 1.0, i);
      else if (initial == "-i") psi = QuantumState::qubit(q.levels, 1.0, -i);
      else throw InvalidParameter("unknown initial state " + initial);
      const auto times = linspace(-0.5 * p.t_gate, 0.5 * p.t_gate, std::max(2, evo_samples));
      Trajectory traj;
      const auto final_state = propagate(psi, p, q, {}, times, &traj);
      Output out(c.out);
      if (json) {
        std::vector<double> pops(q.levels);
        for (int n = 0; n < q.levels; ++n) pops[n] = std::norm(final_state.amplitudes(n));
        out.stream() << dump_json({{"params", p}, {"initial", initial}, {"final_populations", pops},
                                   {"metrics", gate_summary(p, q)}})
                     << '\n';
      } else {
        write_trajectory_csv(out.stream(), traj);
      }
    } else if (*cal) {
      CalibrationOptions opts;
      opts.enable_alc = !no_alc;
      if (step2 == "ref") opts.step2 = Step2Mode::ref;
      else if (step2 != "direct") throw InvalidParameter("--step2 must be direct or ref");
      opts.ref_grid.parallel = c.parallel;
      opts.ref_grid.ref.seed = c.seed;
      const auto m = calibration_method_from_string(method);
      CalibrationRecord rec;
      if (m == CalibrationMethod::iterative) {
        rec = calibrate_iterative(q, c.t_gate, opts);
      } else if (m == CalibrationMethod::global) {
        rec = calibrate_global(q, c.t_gate, calibrate_iterative(q, c.t_gate, opts), opts);
      } else {
        rec = calibrate_analytic_seeded(q, c.t_gate, opts);
      }
      Output out(c.out);
      if (json) {
        out.stream() << dump_json(rec) << '\n';
      } else {
        SweepRow row;
        row.eta_ghz = q.eta_ghz;
        row.t_gate_ns = c.t_gate;
        row.strategy = opts.enable_alc ? (m == CalibrationMethod::global ? Strategy::drag_alc_global
                                                                          : Strategy::drag_alc_iterative)
                                       : Strategy::drag_fixed_alpha;
        row.params = rec.params;
        row.metrics = rec.metrics;
        write_sweep_csv(out.stream(), {row});
      }
      std::cerr << to_string(rec.method) << ": leakage " << rec.leakage() << ", gate error "
                << rec.metrics.comp_error() << (rec.converged() ? "" : " (optimizer budget exhausted)") << '\n';
    } else if (*ref) {
      const auto p = ref_pulse.build(q, c.t_gate);
      RefOptions ro;
      ro.delay = virtual_z_delay ? DelayMode::virtual_z : DelayMode::free_evolution;
      ro.shots = shots;
      ro.seed = c.seed;
      const auto scan = ref_scan(p, q, t_min, t_max, ref_points, n_reps, ro);
      Output out(c.out);
      if (json) {
        out.stream() << dump_json(scan) << '\n';
      } else {
        write_ref_scan_csv(out.stream(), scan);
      }
      for (const auto& pk : scan.peaks) {
        std::cerr << "peak k=" << pk.k << " type " << to_string(pk.type) << " predicted " << pk.predicted_delay
                  << " ns, observed " << pk.t_delay << " ns, p2 " << pk.height << '\n';
      }
    } else if (*sweep || *rob) {
      SweepSpec s;
      s.eta_ghz = etas.empty() ? std::vector<double>{q.eta_ghz} : etas;
      s.t_gate_ns = t_gates;
      s.strategies = parse_strategies(strategy_names);
      s.f10_ghz = q.f10_ghz;
      s.levels = q.levels;
      s.parallel = c.parallel;
      Output out(c.out);
      if (*sweep) {
        const auto rows = run_strategy_sweep(s);
        if (json) {
          out.stream() << dump_json({{"schema", kSchemaVersion}, {"rows", rows}}) << '\n';
        } else {
          write_sweep_csv(out.stream(), rows);
        }
        int failed = 0;
        for (const auto& r : rows) {
          if (!r.ok) {
            ++failed;
            std::cerr << "failed: eta " << r.eta_ghz << " t_gate " << r.t_gate_ns << " " << to_string(r.strategy)
                      << ": " << r.error << '\n';
          }
        }
        if (failed) return 3;
      } else {
        s.freq_shift_mhz = shifts;
        const auto rows = run_robustness(s);
        if (json) {
          out.stream() << dump_json({{"schema", kSchemaVersion}, {"rows", rows}}) << '\n';
        } else {
          write_robustness_csv(out.stream(), rows);
        }
        for (const auto& r : rows)
          if (!r.ok) return 3;
      }
    } else if (*par) {
      if (!(p_step > 0.0) || p_max < p_min) throw InvalidParameter("invalid gate-time range");
      std::vector<double> ts;
      for (int k = 0; p_min + k * p_step <= p_max + 1e-9; ++k) ts.push_back(p_min + k * p_step);
      const auto pts = optimal_parameter_curve(q.eta_ghz, ts);
      Output out(c.out);
      if (json) {
        out.stream() << dump_json({{"eta_ghz", q.eta_ghz}, {"points", pts}}) << '\n';
      } else {
        write_param_curve_csv(out.stream(), pts);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "alc: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
