#include "alc/pulse.hpp"

#include <algorithm>
#include <cmath>

namespace alc {

namespace {

bool in_window(double t, double t_gate) { return t >= -0.5 * t_gate && t <= 0.5 * t_gate; }

double sinc_pi(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - (kPi * x) * (kPi * x) / 6.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

double raised_cosine(double t, double t_gate) {
  if (!in_window(t, t_gate)) return 0.0;
  return 1.0 - std::cos(kTwoPi * (t + 0.5 * t_gate) / t_gate);
}

double raised_cosine_derivative(double t, double t_gate) {
  if (!in_window(t, t_gate)) return 0.0;
  return kTwoPi / t_gate * std::sin(kTwoPi * (t + 0.5 * t_gate) / t_gate);
}

double raised_cosine_spectrum(double f, double t_gate) {
  // F(t) = 1 + cos(2 pi t / T) on the window.
  const double x = f * t_gate;
  return t_gate * (sinc_pi(x) + 0.5 * (sinc_pi(x - 1.0) + sinc_pi(x + 1.0)));
}

Complex main_envelope(double t, const PulseParams& p) {
  if (!in_window(t, p.t_gate) || p.a_main == 0.0) return {};
  const double f = raised_cosine(t, p.t_gate);
  const double df = raised_cosine_derivative(t, p.t_gate);
  const double drag = p.alpha == 0.0 ? 0.0 : p.alpha / (kTwoPi * p.big_delta);
  return p.a_main * Complex(f, drag * df) * std::polar(1.0, kTwoPi * p.delta_main * t);
}

Complex alc_envelope(double t, const PulseParams& p) {
  if (!in_window(t, p.t_gate) || p.a_alc == 0.0) return {};
  if (p.delta_alc == 0.0) throw InvalidParameter("delta_alc must be nonzero when a_alc != 0");
  const double df = raised_cosine_derivative(t, p.t_gate);
  return Complex(0.0, p.a_alc / (kTwoPi * p.delta_alc) * df) *
         std::polar(1.0, kTwoPi * p.delta_alc * t + p.phi_alc);
}

EnvelopeSample sample_envelope(double t, const PulseParams& p) {
  EnvelopeSample s;
  s.t = t;
  s.omega_main = main_envelope(t, p);
  s.omega_alc = alc_envelope(t, p);
  s.composite = s.omega_main + s.omega_alc;
  return s;
}

std::vector<EnvelopeSample> sample_envelopes(const PulseParams& p, double dt) {
  p.validate();
  if (!(dt > 0.0)) throw InvalidParameter("sample step must be positive");
  const int n = std::max(1, static_cast<int>(std::ceil(p.t_gate / dt - 1e-9)));
  const double h = p.t_gate / n;
  std::vector<EnvelopeSample> out;
  out.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = k == n ? 0.5 * p.t_gate : -0.5 * p.t_gate + k * h;
    out.push_back(sample_envelope(t, p));
  }
  return out;
}

double lab_frame_waveform(double t, const PulseParams& p, const TransmonParams& q) {
  if (!in_window(t, p.t_gate)) return 0.0;
  const double f = raised_cosine(t, p.t_gate);
  const double df = raised_cosine_derivative(t, p.t_gate);
  const double f_main = q.f10_ghz + p.delta_main;
  const double f_alc = q.f10_ghz + p.delta_alc;
  double v = p.a_main * f * std::cos(kTwoPi * f_main * t);
  if (p.alpha != 0.0) v -= p.a_main * p.alpha / (kTwoPi * p.big_delta) * df * std::sin(kTwoPi * f_main * t);
  if (p.a_alc != 0.0) {
    v -= p.a_alc / (kTwoPi * p.delta_alc) * df * std::sin(kTwoPi * f_alc * t + p.phi_alc);
  }
  return v;
}

double SpectrumTrace::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

SpectrumTrace analytic_spectrum(const PulseParams& p, Drive which, std::span<const double> freqs) {
  p.validate();
  SpectrumTrace out;
  out.freqs.assign(freqs.begin(), freqs.end());
  out.values.reserve(freqs.size());
  const double drag = p.alpha == 0.0 ? 0.0 : p.alpha / p.big_delta;
  for (double f : freqs) {
    Complex v{};
    if (which != Drive::alc && p.a_main != 0.0) {
      v += p.a_main * (1.0 - drag * (f - p.delta_main)) * raised_cosine_spectrum(f - p.delta_main, p.t_gate);
    }
    if (which != Drive::main && p.a_alc != 0.0) {
      v += p.a_alc * (1.0 - f / p.delta_alc) * raised_cosine_spectrum(f - p.delta_alc, p.t_gate) *
           std::polar(1.0, p.phi_alc);
    }
    out.values.push_back(v);
  }
  return out;
}

SpectrumTrace numeric_spectrum(const PulseParams& p, Drive which, double sample_dt,
                               std::span<const double> freqs) {
  if (!(sample_dt > 0.0) || sample_dt > 0.01) {
    throw InvalidParameter("numeric_spectrum needs 0 < sample_dt <= 0.01 ns");
  }
  const auto samples = sample_envelopes(p, sample_dt);
  const double h = p.t_gate / static_cast<double>(samples.size() - 1);
  std::vector<Complex> env(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    env[k] = which == Drive::main ? s.omega_main : which == Drive::alc ? s.omega_alc : s.composite;
    if (k == 0 || k + 1 == samples.size()) env[k] *= 0.5;
  }
  SpectrumTrace out;
  out.freqs.assign(freqs.begin(), freqs.end());
  out.values.reserve(freqs.size());
  for (double f : freqs) {
    // Phasor recurrence would drift over ~1e4 samples; evaluate directly.
    Complex acc{};
    for (std::size_t k = 0; k < samples.size(); ++k) {
      acc += env[k] * std::polar(1.0, -kTwoPi * f * samples[k].t);
    }
    out.values.push_back(acc * h);
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw InvalidParameter("linspace needs n >= 1");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

const char* to_string(Drive d) {
  switch (d) {
    case Drive::main: return "main";
    case Drive::alc: return "alc";
    case Drive::composite: return "composite";
  }
  return "?";
}

Drive drive_from_string(const std::string& s) {
  if (s == "main") return Drive::main;
  if (s == "alc") return Drive::alc;
  if (s == "composite") return Drive::composite;
  throw InvalidParameter("unknown drive '" + s + "' (main|alc|composite)");
}

}  // namespace alc
