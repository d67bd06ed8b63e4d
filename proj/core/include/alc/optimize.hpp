#pragma once

// Derivative-free local minimisation (Nelder-Mead simplex with restarts).

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace alc {

struct TraceEntry {
  int evaluation = 0;
  double objective = 0.0;
  std::vector<double> x;
};

struct NelderMeadOptions {
  int max_evaluations = 2000;
  int restarts = 2;          // fresh simplices built around the incumbent
  double x_tol = 1e-6;       // simplex diameter, relative to `scale`
  double f_tol_abs = 1e-12;
  double f_tol_rel = 1e-6;
  bool adaptive = true;      // dimension-dependent coefficients (Gao & Han)
  bool keep_trace = true;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
  std::vector<TraceEntry> trace;  // only improvements of the incumbent
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimises `f` starting from `x0`; `scale` gives the initial simplex edge
/// per coordinate and the unit in which x_tol is measured.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> scale,
                           const NelderMeadOptions& opts = {});

/// Golden-section search for a minimum of a unimodal function on [lo, hi].
double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol,
                          double* fmin = nullptr);

}  // namespace alc
