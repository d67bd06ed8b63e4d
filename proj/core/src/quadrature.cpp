#include "alc/quadrature.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace alc {

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw QuadratureError("non-finite integral", error);
  if (error > opts.abs_tol && error > opts.rel_tol * l1) {
    throw QuadratureError("quadrature did not converge (error estimate " + std::to_string(error) + ")", error);
  }
  return value;
}

Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b, const QuadratureOptions& opts) {
  const double re = integrate([&](double t) { return f(t).real(); }, a, b, opts);
  const double im = integrate([&](double t) { return f(t).imag(); }, a, b, opts);
  return {re, im};
}

}  // namespace alc
