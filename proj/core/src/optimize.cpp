#include "alc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace alc {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

class Counter {
 public:
  Counter(const Objective& f, int budget, bool keep, MinimizeResult& res) : f_(f), budget_(budget), keep_(keep), res_(res) {}

  double operator()(const std::vector<double>& x) {
    ++res_.evaluations;
    double v = f_(x);
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    if (res_.x.empty() || v < res_.value) {
      res_.x = x;
      res_.value = v;
      if (keep_) res_.trace.push_back({res_.evaluations, v, x});
    }
    return v;
  }

  bool exhausted() const { return res_.evaluations >= budget_; }

 private:
  const Objective& f_;
  int budget_;
  bool keep_;
  MinimizeResult& res_;
};

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> scale,
                           const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");
  if (scale.size() != n) throw std::invalid_argument("nelder_mead: scale size mismatch");

  MinimizeResult res;
  res.value = std::numeric_limits<double>::infinity();
  Counter eval(f, opts.max_evaluations, opts.keep_trace, res);

  const double dn = static_cast<double>(n);
  const double rho = 1.0;
  const double chi = opts.adaptive ? 1.0 + 2.0 / dn : 2.0;
  const double psi = opts.adaptive ? 0.75 - 0.5 / dn : 0.5;
  const double sigma = opts.adaptive ? 1.0 - 1.0 / dn : 0.5;

  auto diameter = [&](const Simplex& s) {
    double d = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(s.x[j][i] - s.x[0][i]) / scale[i]);
    }
    return d;
  };

  std::vector<double> start = std::move(x0);
  std::vector<double> step(scale.begin(), scale.end());
  for (int round = 0; round <= opts.restarts && !eval.exhausted(); ++round) {
    Simplex s;
    s.x.assign(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) s.x[i + 1][i] += step[i];
    s.f.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) s.f[j] = eval(s.x[j]);

    std::vector<std::size_t> order(n + 1);
    bool done = false;
    while (!eval.exhausted()) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
      Simplex sorted;
      for (auto k : order) {
        sorted.x.push_back(s.x[k]);
        sorted.f.push_back(s.f[k]);
      }
      s = std::move(sorted);

      const double fbest = s.f.front();
      const double fworst = s.f.back();
      if (std::abs(fworst - fbest) <= opts.f_tol_abs + opts.f_tol_rel * std::abs(fbest) &&
          diameter(s) <= opts.x_tol) {
        done = true;
        break;
      }

      std::vector<double> centroid(n, 0.0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.x[j][i] / dn;
      auto along = [&](double coef) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + coef * (s.x[n][i] - centroid[i]);
        return p;
      };

      auto xr = along(-rho);
      const double fr = eval(xr);
      if (fr < s.f[0]) {
        auto xe = along(-rho * chi);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[n] = std::move(xe);
          s.f[n] = fe;
        } else {
          s.x[n] = std::move(xr);
          s.f[n] = fr;
        }
        continue;
      }
      if (fr < s.f[n - 1]) {
        s.x[n] = std::move(xr);
        s.f[n] = fr;
        continue;
      }
      if (fr < s.f[n]) {
        auto xc = along(-rho * psi);
        const double fc = eval(xc);
        if (fc <= fr) {
          s.x[n] = std::move(xc);
          s.f[n] = fc;
          continue;
        }
      } else {
        auto xc = along(psi);
        const double fc = eval(xc);
        if (fc < s.f[n]) {
          s.x[n] = std::move(xc);
          s.f[n] = fc;
          continue;
        }
      }
      for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t i = 0; i < n; ++i) s.x[j][i] = s.x[0][i] + sigma * (s.x[j][i] - s.x[0][i]);
        s.f[j] = eval(s.x[j]);
      }
    }
    res.converged = done;
    start = res.x;
    // Later rounds probe a smaller neighbourhood of the incumbent.
    for (auto& v : step) v *= 0.1;
  }
  res.message = res.converged ? "converged" : "evaluation budget exhausted";
  return res;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol, double* fmin) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = fc < fd ? c : d;
  if (fmin) *fmin = std::min(fc, fd);
  return x;
}

}  // namespace alc
