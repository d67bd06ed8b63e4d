#pragma once

// Time-domain drive envelopes and their spectra.
//
// All envelopes live on the window [-t_gate/2, t_gate/2] and are exactly
// zero outside it. Spectra use the convention X[f] = int x(t) e^{-i 2 pi f t} dt
// with f measured from the qubit frequency f10.

#include <span>
#include <vector>

#include "alc/model.hpp"

namespace alc {

/// F(t) = 1 - cos(2 pi (t + t_gate/2) / t_gate); zero outside the window.
double raised_cosine(double t, double t_gate);
/// dF/dt (1/ns); zero outside the window.
double raised_cosine_derivative(double t, double t_gate);
/// Closed-form transform of F over its finite window (GHz^-1 = ns). Real.
double raised_cosine_spectrum(double f, double t_gate);

/// Omega_main(t) = A_main [F + i alpha/(2 pi Delta) dF/dt] e^{i 2 pi delta_main t}.
Complex main_envelope(double t, const PulseParams& p);
/// Omega_alc(t) = i A_alc/(2 pi delta_alc) dF/dt e^{i 2 pi delta_alc t + i phi_alc}.
Complex alc_envelope(double t, const PulseParams& p);

struct EnvelopeSample {
  double t = 0.0;
  Complex omega_main;
  Complex omega_alc;
  Complex composite;
};

EnvelopeSample sample_envelope(double t, const PulseParams& p);

/// Samples t = -t_gate/2 + k*dt for k = 0..n (the last sample lands on
/// +t_gate/2; dt is shrunk so an integer number of steps fits).
std::vector<EnvelopeSample> sample_envelopes(const PulseParams& p, double dt);

/// Real lab-frame drive coefficient of (a + a^dag) at time t (GHz), i.e.
/// Re[Omega_composite(t) e^{i 2 pi f10 t}]. For waveform export.
double lab_frame_waveform(double t, const PulseParams& p, const TransmonParams& q);

enum class Drive { main, alc, composite };

struct SpectrumTrace {
  std::vector<double> freqs;   // GHz offset from f10
  std::vector<Complex> values; // GHz * ns

  double max_abs() const;
};

SpectrumTrace analytic_spectrum(const PulseParams& p, Drive which, std::span<const double> freqs);

/// Direct (trapezoidal) Fourier sum of the sampled envelope at the requested
/// frequencies. sample_dt must not exceed 0.01 ns.
SpectrumTrace numeric_spectrum(const PulseParams& p, Drive which, double sample_dt,
                               std::span<const double> freqs);

/// Evenly spaced grid lo..hi inclusive with n points.
std::vector<double> linspace(double lo, double hi, int n);

const char* to_string(Drive d);
Drive drive_from_string(const std::string& s);

}  // namespace alc
