#include "alc/io.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace alc {

using nlohmann::json;

void to_json(json& j, const TransmonParams& q) {
  j = json{{"f10_ghz", q.f10_ghz}, {"eta_ghz", q.eta_ghz}, {"levels", q.levels}};
}

void from_json(const json& j, TransmonParams& q) {
  q.f10_ghz = j.at("f10_ghz").get<double>();
  q.eta_ghz = j.at("eta_ghz").get<double>();
  q.levels = j.at("levels").get<int>();
}

void to_json(json& j, const PulseParams& p) {
  j = json{{"t_gate_ns", p.t_gate},       {"a_main_ghz", p.a_main},         {"delta_main_ghz", p.delta_main},
           {"alpha", p.alpha},            {"big_delta_ghz", p.big_delta},   {"a_alc_ghz", p.a_alc},
           {"delta_alc_ghz", p.delta_alc}, {"phi_alc_rad", p.phi_alc},     {"z_correction_rad", p.z_correction}};
}

void from_json(const json& j, PulseParams& p) {
  p.t_gate = j.at("t_gate_ns").get<double>();
  p.a_main = j.at("a_main_ghz").get<double>();
  p.delta_main = j.at("delta_main_ghz").get<double>();
  p.alpha = j.at("alpha").get<double>();
  p.big_delta = j.at("big_delta_ghz").get<double>();
  p.a_alc = j.at("a_alc_ghz").get<double>();
  p.delta_alc = j.at("delta_alc_ghz").get<double>();
  p.phi_alc = j.at("phi_alc_rad").get<double>();
  p.z_correction = j.at("z_correction_rad").get<double>();
}

void to_json(json& j, const GateSummary& s) {
  std::vector<double> pops(s.populations.data(), s.populations.data() + s.populations.size());
  j = json{{"populations", pops},
           {"leakage", s.leakage},
           {"comp_fidelity", s.comp_fidelity},
           {"subspace_fidelity", s.subspace_fidelity}};
}

void from_json(const json& j, GateSummary& s) {
  const auto pops = j.at("populations").get<std::vector<double>>();
  s.populations = Eigen::Map<const RVector>(pops.data(), static_cast<Eigen::Index>(pops.size()));
  s.leakage = j.at("leakage").get<double>();
  s.comp_fidelity = j.at("comp_fidelity").get<double>();
  s.subspace_fidelity = j.at("subspace_fidelity").get<double>();
}

void to_json(json& j, const CalibrationTraceEntry& e) {
  j = json{{"stage", e.stage}, {"evaluation", e.evaluation}, {"objective", e.objective}};
}

void from_json(const json& j, CalibrationTraceEntry& e) {
  e.stage = j.at("stage").get<std::string>();
  e.evaluation = j.at("evaluation").get<int>();
  e.objective = j.at("objective").get<double>();
}

void to_json(json& j, const CalibrationStage& s) {
  j = json{{"name", s.name},           {"objective", s.objective},     {"params", s.params}, {"metrics", s.metrics},
           {"evaluations", s.evaluations}, {"converged", s.converged}, {"message", s.message}};
}

void from_json(const json& j, CalibrationStage& s) {
  s.name = j.at("name").get<std::string>();
  s.objective = j.at("objective").get<std::string>();
  s.params = j.at("params").get<PulseParams>();
  s.metrics = j.at("metrics").get<GateSummary>();
  s.evaluations = j.at("evaluations").get<int>();
  s.converged = j.at("converged").get<bool>();
  s.message = j.at("message").get<std::string>();
}

void to_json(json& j, const CalibrationRecord& r) {
  j = json{{"schema", kSchemaVersion}, {"method", to_string(r.method)}, {"device", r.device}, {"params", r.params},
           {"metrics", r.metrics},     {"stages", r.stages},            {"trace", r.trace}};
}

void from_json(const json& j, CalibrationRecord& r) {
  r.method = calibration_method_from_string(j.at("method").get<std::string>());
  r.device = j.at("device").get<TransmonParams>();
  r.params = j.at("params").get<PulseParams>();
  r.metrics = j.at("metrics").get<GateSummary>();
  r.stages = j.at("stages").get<std::vector<CalibrationStage>>();
  r.trace = j.at("trace").get<std::vector<CalibrationTraceEntry>>();
}

void to_json(json& j, const SweepRow& r) {
  j = json{{"eta_ghz", r.eta_ghz}, {"t_gate_ns", r.t_gate_ns}, {"strategy", to_string(r.strategy)}, {"ok", r.ok}};
  if (r.ok) {
    j["params"] = r.params;
    j["metrics"] = r.metrics;
  } else {
    j["error"] = r.error;
  }
}

void to_json(json& j, const RobustnessRow& r) {
  j = json{{"eta_ghz", r.eta_ghz},
           {"t_gate_ns", r.t_gate_ns},
           {"strategy", to_string(r.strategy)},
           {"shift_mhz", r.shift_mhz},
           {"ok", r.ok}};
  if (r.ok) {
    j["params"] = r.params;
    j["metrics"] = r.metrics;
  } else {
    j["error"] = r.error;
  }
}

void to_json(json& j, const AlcSolution& s) {
  j = json{{"a_alc_ghz", s.a_alc},         {"delta_alc_ghz", s.delta_alc},   {"a_main_ghz", s.a_main},
           {"residuals", s.residuals},     {"method", to_string(s.method)}, {"iterations", s.iterations}};
}

void to_json(json& j, const RefScan& s) {
  json peaks = json::array();
  for (const auto& p : s.peaks) {
    peaks.push_back({{"k", p.k},
                     {"type", to_string(p.type)},
                     {"predicted_delay_ns", p.predicted_delay},
                     {"t_delay_ns", p.t_delay},
                     {"p2", p.height}});
  }
  j = json{{"n_reps", s.n_reps}, {"t_delay_ns", s.t_delay}, {"p2", s.p2}, {"peaks", peaks}};
}

namespace {

json trace_json(const SpectrumTrace& t) {
  json values = json::array();
  for (const auto& v : t.values) values.push_back({v.real(), v.imag()});
  return json{{"freqs_ghz", t.freqs}, {"values", values}};
}

class CsvRow {
 public:
  explicit CsvRow(std::ostream& out) : out_(out) {}
  ~CsvRow() { out_ << '\n'; }

  CsvRow& operator<<(double v) {
    sep();
    if (std::isfinite(v)) {
      out_ << v;
    } else {
      out_ << "nan";
    }
    return *this;
  }
  CsvRow& operator<<(const std::string& s) {
    sep();
    out_ << s;
    return *this;
  }
  CsvRow& operator<<(const char* s) { return *this << std::string(s); }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ostream& out_;
  bool first_ = true;
};

void header(std::ostream& out, std::initializer_list<const char*> cols) {
  bool first = true;
  for (const char* c : cols) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
  out.precision(std::numeric_limits<double>::max_digits10);
}

}  // namespace

void to_json(json& j, const SpectrumReport& r) {
  j = json{{"eta_ghz", r.eta_ghz},
           {"t_gate_ns", r.t_gate_ns},
           {"strategy", to_string(r.strategy)},
           {"leakage", r.leakage},
           {"notch_offset_ghz", r.notch_offset_ghz},
           {"notch_shift_mhz", r.notch_shift_mhz()},
           {"band", trace_json(r.band)},
           {"zoom", trace_json(r.zoom)}};
}

void to_json(json& j, const OptimalParameterPoint& p) {
  j = json{{"t_gate_ns", p.t_gate},
           {"a_main_ghz", p.a_main},
           {"a_alc_exact_ghz", p.a_alc_exact},
           {"a_alc_closed_ghz", p.a_alc_closed},
           {"delta_alc_exact_ghz", p.delta_alc_exact},
           {"delta_alc_closed_ghz", p.delta_alc_closed},
           {"a_alc_over_a_main", p.ratio()},
           {"method", to_string(p.method)}};
}

std::string dump_json(const json& j) { return j.dump(2); }

void write_waveform_csv(std::ostream& out, const PulseParams& p, const TransmonParams& q, double dt) {
  header(out, {"t_ns", "re_composite", "im_composite", "lab_frame"});
  for (const auto& s : sample_envelopes(p, dt)) {
    CsvRow(out) << s.t << s.composite.real() << s.composite.imag() << lab_frame_waveform(s.t, p, q);
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const int d = traj.populations.empty() ? 4 : static_cast<int>(traj.populations.front().size());
  out << "t_ns";
  for (int n = 0; n < d; ++n) out << ",p" << n;
  out << '\n';
  out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    CsvRow row(out);
    row << traj.t[i];
    for (int n = 0; n < d; ++n) row << traj.populations[i](n);
  }
}

void write_ref_scan_csv(std::ostream& out, const RefScan& scan) {
  header(out, {"t_delay_ns", "p2"});
  for (std::size_t i = 0; i < scan.t_delay.size(); ++i) CsvRow(out) << scan.t_delay[i] << scan.p2[i];
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  header(out, {"eta_ghz", "t_gate_ns", "strategy", "leakage", "p2", "p3", "comp_error", "a_main", "delta_main_mhz",
               "a_alc", "delta_alc_mhz", "alpha", "z_correction_rad"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    CsvRow row(out);
    row << r.eta_ghz << r.t_gate_ns << to_string(r.strategy);
    if (r.ok) {
      row << r.metrics.leakage << r.metrics.p2() << r.metrics.p3() << r.metrics.comp_error() << r.params.a_main
          << 1e3 * r.params.delta_main << r.params.a_alc << 1e3 * r.params.delta_alc << r.params.alpha
          << r.params.z_correction;
    } else {
      for (int k = 0; k < 10; ++k) row << nan;
    }
  }
}

void write_robustness_csv(std::ostream& out, const std::vector<RobustnessRow>& rows) {
  header(out, {"eta_ghz", "t_gate_ns", "strategy", "shift_mhz", "leakage", "p2", "p3", "comp_error"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    CsvRow row(out);
    row << r.eta_ghz << r.t_gate_ns << to_string(r.strategy) << r.shift_mhz;
    if (r.ok) {
      row << r.metrics.leakage << r.metrics.p2() << r.metrics.p3() << r.metrics.comp_error();
    } else {
      row << nan << nan << nan << nan;
    }
  }
}

void write_param_curve_csv(std::ostream& out, const std::vector<OptimalParameterPoint>& pts) {
  header(out, {"t_gate_ns", "a_alc_exact", "a_alc_closed", "delta_alc_exact", "delta_alc_closed", "a_alc_over_a_main"});
  for (const auto& p : pts)
    CsvRow(out) << p.t_gate << p.a_alc_exact << p.a_alc_closed << p.delta_alc_exact << p.delta_alc_closed << p.ratio();
}

void write_spectrum_csv(std::ostream& out, const SpectrumTrace& trace) {
  header(out, {"f_offset_ghz", "re", "im", "abs"});
  for (std::size_t i = 0; i < trace.freqs.size(); ++i) {
    const Complex v = trace.values[i];
    CsvRow(out) << trace.freqs[i] << v.real() << v.imag() << std::abs(v);
  }
}

void write_spectrum_report_csv(std::ostream& out, const std::vector<SpectrumReport>& reports) {
  header(out, {"eta_ghz", "t_gate_ns", "strategy", "leakage", "notch_offset_ghz", "notch_shift_mhz"});
  for (const auto& r : reports)
    CsvRow(out) << r.eta_ghz << r.t_gate_ns << to_string(r.strategy) << r.leakage << r.notch_offset_ghz
                << r.notch_shift_mhz();
}

}  // namespace alc
