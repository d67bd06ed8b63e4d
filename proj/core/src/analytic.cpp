#include "alc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/math/quadrature/gauss.hpp>

#include "alc/pulse.hpp"

namespace alc {

double RotationProfile::theta(double t) const {
  const double tc = std::clamp(t, -0.5 * t_gate, 0.5 * t_gate);
  return kPi / (2.0 * t_gate) * ((tc + 0.5 * t_gate) + t_gate / kTwoPi * std::sin(kTwoPi * tc / t_gate));
}

double RotationProfile::theta_tilde(double t) const {
  const double tc = std::clamp(t, -0.5 * t_gate, 0.5 * t_gate);
  return kPi / (2.0 * t_gate) * (tc + t_gate / kTwoPi * std::sin(kTwoPi * tc / t_gate));
}

RotationProfile rotation_profile(double t_gate) {
  if (!(t_gate > 0.0)) throw InvalidParameter("t_gate must be positive");
  return RotationProfile{t_gate};
}

namespace {

double profile_sign(CardinalProfile profile) { return profile == CardinalProfile::plus ? 1.0 : -1.0; }

}  // namespace

Complex leakage_amplitude(const PulseParams& p, const TransmonParams& q, CardinalProfile profile,
                          const QuadratureOptions& opts) {
  p.validate();
  const double T = p.t_gate;
  const double eta = q.eta_ghz;
  const double sgn = profile_sign(profile);
  const auto rot = rotation_profile(T);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto integrand = [&](double t) {
    const Complex omega_c = std::conj(main_envelope(t, p) + alc_envelope(t, p));
    const Complex c1 = inv_sqrt2 * std::polar(1.0, -sgn * rot.theta(t) / 2.0);
    return std::polar(1.0, kTwoPi * eta * (0.5 * T - t)) * omega_c * c1;
  };
  const Complex integral = integrate_complex(integrand, -0.5 * T, 0.5 * T, opts);
  return Complex(0.0, -std::sqrt(2.0) * kPi) * integral;
}

Complex leakage_amplitude_by_parts(const PulseParams& p, const TransmonParams& q, CardinalProfile profile,
                                   const QuadratureOptions& opts) {
  p.validate();
  const double T = p.t_gate;
  const double eta = q.eta_ghz;
  const double sgn = profile_sign(profile);
  const auto rot = rotation_profile(T);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  auto integrand = [&](double t) {
    const double f = raised_cosine(t, T);
    const double df = raised_cosine_derivative(t, T);
    const Complex c1 = inv_sqrt2 * std::polar(1.0, -sgn * rot.theta(t) / 2.0);
    const Complex c1_dot = -sgn * 0.5 * i * (kPi * f / (2.0 * T)) * c1;
    Complex bracket = -i * (p.a_main / eta) * f * c1_dot;
    if (p.a_alc != 0.0) {
      bracket += -i * (p.a_alc / p.delta_alc) * df * std::polar(1.0, -kTwoPi * p.delta_alc * t - p.phi_alc) * c1;
    }
    return std::polar(1.0, kTwoPi * eta * (0.5 * T - t)) * bracket;
  };
  const Complex integral = integrate_complex(integrand, -0.5 * T, 0.5 * T, opts);
  return -i * (std::sqrt(2.0) / 2.0) * integral;
}

ConditionIntegrals condition_integrals(double t_gate, double eta, double delta_alc, const QuadratureOptions& opts) {
  const auto rot = rotation_profile(t_gate);
  const double T = t_gate;
  const double half = 0.5 * T;
  const double eps = eta + delta_alc;
  auto f = [&](double t) { return raised_cosine(t, T); };
  auto df = [&](double t) { return raised_cosine_derivative(t, T); };
  auto th = [&](double t) { return 0.5 * rot.theta_tilde(t); };
  ConditionIntegrals c;
  c.i1 = integrate([&](double t) { return f(t) * f(t) * std::cos(th(t)) * std::cos(kTwoPi * eta * t); }, 0.0, half, opts);
  c.i2 = integrate([&](double t) { return f(t) * f(t) * std::sin(th(t)) * std::sin(kTwoPi * eta * t); }, 0.0, half, opts);
  c.j1 = integrate([&](double t) { return df(t) * std::sin(th(t)) * std::cos(kTwoPi * eps * t); }, 0.0, half, opts);
  c.j2 = integrate([&](double t) { return df(t) * std::cos(th(t)) * std::sin(kTwoPi * eps * t); }, 0.0, half, opts);
  return c;
}

namespace {

double default_a_main(double t_gate, double a_main) { return a_main > 0.0 ? a_main : 1.0 / (4.0 * t_gate); }

std::array<double, 2> residuals_from(const ConditionIntegrals& c, double t_gate, double eta, double a_main,
                                     double a_alc, double delta_alc) {
  const double s = kPi / (4.0 * t_gate) * a_main / eta;
  const double u = a_alc / delta_alc;
  const double norm = s * std::abs(c.i1);
  return {(-s * c.i1 - u * c.j1) / norm, (s * c.i2 - u * c.j2) / norm};
}

double residual_norm(const std::array<double, 2>& r) { return std::hypot(r[0], r[1]); }

// Reduced condition I2 J1(delta) + I1 J2(delta) = 0 (A_alc eliminated).
std::optional<AlcSolution> solve_by_bisection(double t_gate, double eta, double a_main, double tol) {
  const auto base = condition_integrals(t_gate, eta, -eta);
  auto g = [&](double delta) {
    const auto c = condition_integrals(t_gate, eta, delta);
    return base.i2 * c.j1 + base.i1 * c.j2;
  };
  // Bracket the sign change closest to -eta on a grid spanning +-50% of eta.
  const int n = 100;
  std::optional<std::pair<double, double>> best;
  double prev_d = -1.5 * eta;
  double prev_g = g(prev_d);
  for (int k = 1; k <= n; ++k) {
    const double d = -1.5 * eta + eta * k / n;
    const double gd = g(d);
    if ((prev_g <= 0.0) != (gd <= 0.0)) {
      const double mid = 0.5 * (prev_d + d);
      if (!best || std::abs(mid + eta) < std::abs(0.5 * (best->first + best->second) + eta)) best = {prev_d, d};
    }
    prev_d = d;
    prev_g = gd;
  }
  if (!best) return std::nullopt;
  double lo = best->first, hi = best->second;
  double glo = g(lo);
  int it = 0;
  while (hi - lo > 1e-15 * eta && it < 200) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm <= 0.0) == (glo <= 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
    ++it;
  }
  AlcSolution sol;
  sol.delta_alc = 0.5 * (lo + hi);
  const auto c = condition_integrals(t_gate, eta, sol.delta_alc);
  const double s = kPi / (4.0 * t_gate) * a_main / eta;
  sol.a_alc = -s * c.i1 * sol.delta_alc / c.j1;
  sol.a_main = a_main;
  sol.residuals = residuals_from(c, t_gate, eta, a_main, sol.a_alc, sol.delta_alc);
  sol.method = SolveMethod::bisection_fallback;
  sol.iterations = it;
  if (residual_norm(sol.residuals) > std::max(tol, 1e-10)) return std::nullopt;
  return sol;
}

}  // namespace

std::array<double, 2> condition_residuals(double t_gate, double eta, double a_main, double a_alc, double delta_alc,
                                          const QuadratureOptions& opts) {
  const auto c = condition_integrals(t_gate, eta, delta_alc, opts);
  return residuals_from(c, t_gate, eta, default_a_main(t_gate, a_main), a_alc, delta_alc);
}

AlcSolution solve_conditions(double t_gate, double eta, const SolveOptions& opts) {
  if (!(t_gate > 0.0) || !(eta > 0.0)) throw InvalidParameter("t_gate and eta must be positive");
  const double a_main = default_a_main(t_gate, opts.a_main);

  // Scaled unknowns: x0 = A_alc / A_main, x1 = delta_alc / eta.
  auto to_params = [&](const std::array<double, 2>& x) { return std::pair{x[0] * a_main, x[1] * eta}; };
  auto residual = [&](const std::array<double, 2>& x) {
    const auto [a, d] = to_params(x);
    return condition_residuals(t_gate, eta, a_main, a, d);
  };

  std::array<double, 2> best_r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  if (!opts.force_fallback) {
    std::array<double, 2> x = {closed_form_a_alc(t_gate, eta, a_main) / a_main, closed_form_delta_alc(t_gate, eta) / eta};
    auto r = residual(x);
    best_r = r;
    int it = 0;
    bool ok = residual_norm(r) < opts.tolerance;
    while (!ok && it < opts.max_iterations) {
      ++it;
      const double h = 1e-6;
      double jac[2][2];
      for (int k = 0; k < 2; ++k) {
        auto xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const auto rp = residual(xp);
        const auto rm = residual(xm);
        jac[0][k] = (rp[0] - rm[0]) / (2.0 * h);
        jac[1][k] = (rp[1] - rm[1]) / (2.0 * h);
      }
      const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
      if (!(std::abs(det) > 0.0)) break;
      const std::array<double, 2> step = {-(jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
                                          -(-jac[1][0] * r[0] + jac[0][0] * r[1]) / det};
      double lambda = 1.0;
      bool accepted = false;
      while (lambda > 1.0 / 1024.0) {
        const std::array<double, 2> trial = {x[0] + lambda * step[0], x[1] + lambda * step[1]};
        const auto rt = residual(trial);
        if (residual_norm(rt) < residual_norm(r)) {
          x = trial;
          r = rt;
          accepted = true;
          break;
        }
        lambda *= 0.5;
      }
      if (residual_norm(r) < residual_norm(best_r)) best_r = r;
      ok = residual_norm(r) < opts.tolerance;
      if (!accepted) break;
    }
    // Roots far from the leakage transition are spurious branches of J1, J2.
    ok = ok && x[1] > -1.5 && x[1] < -0.5;
    if (ok) {
      const auto [a, d] = to_params(x);
      return AlcSolution{a, d, a_main, r, SolveMethod::exact_2x2_solve, it};
    }
  }
  if (auto sol = solve_by_bisection(t_gate, eta, a_main, opts.tolerance)) return *sol;
  throw RootFindingError("cancellation conditions: root finder did not converge", best_r);
}

double closed_form_a_alc(double t_gate, double eta, double a_main) {
  a_main = default_a_main(t_gate, a_main);
  const auto rot = rotation_profile(t_gate);
  const double T = t_gate;
  const auto c = condition_integrals(T, eta, -eta);
  const double k1 = integrate(
      [&](double t) { return raised_cosine_derivative(t, T) * std::sin(0.5 * rot.theta_tilde(t)); }, 0.0, 0.5 * T);
  return kPi * a_main / (4.0 * T) * c.i1 / k1;
}

double closed_form_delta_alc(double t_gate, double eta) {
  const auto rot = rotation_profile(t_gate);
  const double T = t_gate;
  const auto c = condition_integrals(T, eta, -eta);
  const double k1 = integrate(
      [&](double t) { return raised_cosine_derivative(t, T) * std::sin(0.5 * rot.theta_tilde(t)); }, 0.0, 0.5 * T);
  const double k2 = integrate(
      [&](double t) { return raised_cosine_derivative(t, T) * kTwoPi * t * std::cos(0.5 * rot.theta_tilde(t)); }, 0.0,
      0.5 * T);
  return -eta - c.i2 * k1 / (c.i1 * k2);
}

std::vector<OptimalParameterPoint> optimal_parameter_curve(double eta, const std::vector<double>& t_gates) {
  std::vector<OptimalParameterPoint> out;
  out.reserve(t_gates.size());
  for (double t : t_gates) {
    const auto sol = solve_conditions(t, eta);
    out.push_back({t, sol.a_main, sol.a_alc, closed_form_a_alc(t, eta), sol.delta_alc, closed_form_delta_alc(t, eta),
                   sol.method});
  }
  return out;
}

PulseShape raised_cosine_shape(double t_gate) {
  const auto rot = rotation_profile(t_gate);
  PulseShape s;
  s.t_gate = t_gate;
  s.value = [t_gate](double t) { return raised_cosine(t, t_gate); };
  s.derivative = [t_gate](double t) { return raised_cosine_derivative(t, t_gate); };
  s.theta_tilde = [rot](double t) { return rot.theta_tilde(t); };
  return s;
}

double PhiOptimalityReport::worst() const {
  return std::max({std::abs(main_plus), std::abs(main_minus), std::abs(alc_plus), std::abs(alc_minus)});
}

PhiOptimalityReport phi_alc_optimality_check(const PulseShape& shape, double eta, double delta_alc,
                                             const QuadratureOptions& opts) {
  const double T = shape.t_gate;
  std::function<double(double)> th = shape.theta_tilde;
  if (!th) {
    // Fixed Gauss-Legendre: the adaptive error estimate is unreliable on the
    // very short [0, t] intervals near the pulse centre.
    th = [&shape, T](double t) {
      return kPi / (2.0 * T) * boost::math::quadrature::gauss<double, 30>::integrate(shape.value, 0.0, t);
    };
  }
  auto main_side = [&](double sgn) {
    const Complex v = integrate_complex(
        [&](double t) {
          const double f = shape.value(t);
          return std::polar(f * f, -kTwoPi * eta * t - sgn * th(t) / 2.0);
        },
        -0.5 * T, 0.5 * T, opts);
    return v.imag() / std::abs(v);
  };
  auto alc_side = [&](double sgn) {
    const Complex v = integrate_complex(
        [&](double t) { return std::polar(1.0, -kTwoPi * (eta + delta_alc) * t - sgn * th(t) / 2.0) * shape.derivative(t); },
        -0.5 * T, 0.5 * T, opts);
    const Complex rhs = Complex(0.0, 1.0) * v;
    return rhs.imag() / std::abs(rhs);
  };
  PhiOptimalityReport r;
  r.main_plus = main_side(1.0);
  r.main_minus = main_side(-1.0);
  r.alc_plus = alc_side(1.0);
  r.alc_minus = alc_side(-1.0);
  return r;
}

PhiOptimalityReport phi_alc_optimality_check(double t_gate, double eta) {
  const auto sol = solve_conditions(t_gate, eta);
  return phi_alc_optimality_check(raised_cosine_shape(t_gate), eta, sol.delta_alc);
}

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::exact_2x2_solve: return "exact_2x2_solve";
    case SolveMethod::bisection_fallback: return "bisection_fallback";
    case SolveMethod::closed_form: return "closed_form";
  }
  return "?";
}

}  // namespace alc
