#include "alc/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace alc {

void TransmonParams::validate() const {
  if (!(eta_ghz > 0.0)) throw InvalidParameter("eta_ghz must be positive");
  if (!(eta_ghz < f10_ghz)) throw InvalidParameter("eta_ghz must be smaller than f10_ghz");
  if (levels < 3) throw InvalidParameter("levels must be at least 3 (state |2> must exist)");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

TransmonParams parse_transmon_config(const std::string& text) {
  TransmonParams q;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto sep = line.find_first_of("=:");
    if (sep == std::string::npos) {
      throw InvalidParameter("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, sep));
    const std::string value = trim(line.substr(sep + 1));
    try {
      if (key == "f10_ghz") {
        q.f10_ghz = std::stod(value);
      } else if (key == "eta_ghz") {
        q.eta_ghz = std::stod(value);
      } else if (key == "levels") {
        q.levels = std::stoi(value);
      } else {
        throw InvalidParameter("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const InvalidParameter*>(&e)) throw;
      throw InvalidParameter("config line " + std::to_string(lineno) + ": bad value '" + value + "'");
    }
  }
  q.validate();
  return q;
}

TransmonParams load_transmon_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_transmon_config(ss.str());
}

LadderOperators build_operators(const TransmonParams& q) {
  q.validate();
  const int d = q.levels;
  LadderOperators ops;
  ops.a = CMatrix::Zero(d, d);
  ops.number = RVector::Zero(d);
  ops.kerr = RVector::Zero(d);
  for (int n = 0; n < d; ++n) {
    ops.number(n) = n;
    ops.kerr(n) = -q.eta_ghz * n * (n - 1) / 2.0;
    if (n > 0) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  ops.a_dagger = ops.a.adjoint();
  return ops;
}

QuantumState QuantumState::basis(int levels, int n) {
  if (n < 0 || n >= levels) throw InvalidParameter("basis index out of range");
  QuantumState s;
  s.amplitudes = CVector::Zero(levels);
  s.amplitudes(n) = 1.0;
  return s;
}

QuantumState QuantumState::qubit(int levels, Complex c0, Complex c1) {
  if (levels < 2) throw InvalidParameter("need at least two levels");
  const double nrm = std::sqrt(std::norm(c0) + std::norm(c1));
  if (!(nrm > 0.0)) throw InvalidParameter("zero qubit state");
  QuantumState s;
  s.amplitudes = CVector::Zero(levels);
  s.amplitudes(0) = c0 / nrm;
  s.amplitudes(1) = c1 / nrm;
  return s;
}

double QuantumState::leakage() const {
  double sum = 0.0;
  for (int n = 2; n < amplitudes.size(); ++n) sum += std::norm(amplitudes(n));
  return sum;
}

void PulseParams::validate() const {
  if (!(t_gate > 0.0)) throw InvalidParameter("t_gate must be positive");
  if (alpha != 0.0 && big_delta == 0.0) throw InvalidParameter("big_delta must be nonzero");
  if (a_alc != 0.0 && delta_alc == 0.0) throw InvalidParameter("delta_alc must be nonzero when a_alc != 0");
  for (double v : {t_gate, a_main, delta_main, alpha, big_delta, a_alc, delta_alc, phi_alc, z_correction}) {
    if (!std::isfinite(v)) throw InvalidParameter("pulse parameters must be finite");
  }
}

PulseParams PulseParams::nominal(const TransmonParams& q, double t_gate) {
  PulseParams p;
  p.t_gate = t_gate;
  p.a_main = 1.0 / (4.0 * t_gate);
  p.delta_main = 0.0;
  p.alpha = 1.0;
  p.big_delta = -q.eta_ghz;
  p.a_alc = 0.0;
  p.delta_alc = -q.eta_ghz;
  p.phi_alc = 0.0;
  p.z_correction = 0.0;
  return p;
}

void PulseParams::bind_notch(double eta, NotchBinding binding) {
  switch (binding) {
    case NotchBinding::follow_detuning: big_delta = -(eta + delta_main); break;
    case NotchBinding::fixed_eta: big_delta = -eta; break;
    case NotchBinding::free: break;
  }
}

}  // namespace alc
