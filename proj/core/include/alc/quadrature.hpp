#pragma once

// Adaptive Gauss-Kronrod quadrature for real and complex integrands.

#include <functional>
#include <stdexcept>

#include "alc/model.hpp"

namespace alc {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate) : std::runtime_error(what), error_estimate(estimate) {}
  double error_estimate;
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-13;
  unsigned max_depth = 18;
};

/// Integral of f over [a, b]. Throws QuadratureError if neither tolerance is
/// met by the error estimate.
double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts = {});
Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b,
                          const QuadratureOptions& opts = {});

}  // namespace alc
