#pragma once

// Fixed-order and composite Gauss-Legendre rules, plus a thin adaptive
// wrapper around Boost's Gauss-Kronrod integrator.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace zetadrive::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

namespace detail {

inline Rule compute_gauss_legendre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, refined by Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1]. Rules are computed once and
/// shared; the returned reference stays valid for the program lifetime.
inline const Rule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(detail::compute_gauss_legendre(n));
  return *slot;
}

/// Composite Gauss-Legendre nodes/weights over [a, b] split into `panels`
/// equal panels of `order` points each. Appends to `t` and `w`.
inline void append_composite(double a, double b, int panels, int order,
                             std::vector<double>& t, std::vector<double>& w) {
  const Rule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + h * p;
    const double mid = lo + 0.5 * h;
    for (int j = 0; j < order; ++j) {
      t.push_back(mid + 0.5 * h * r.nodes[j]);
      w.push_back(0.5 * h * r.weights[j]);
    }
  }
}

template <class F>
double integrate_composite(F&& f, double a, double b, int panels,
                           int order = 16) {
  const Rule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + h * (p + 0.5);
    double s = 0.0;
    for (int j = 0; j < order; ++j) s += r.weights[j] * f(mid + 0.5 * h * r.nodes[j]);
    sum += 0.5 * h * s;
  }
  return sum;
}

namespace detail {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

template <class F>
double adaptive_gk(F& f, double a, double b, double whole, double err, double l1,
                   double abs_tol, unsigned depth) {
  // Kronrod error estimates bottom out near rounding level; stop there.
  if (err <= abs_tol || err <= 1e-14 * l1 || depth == 0) return whole;
  const double m = 0.5 * (a + b);
  double el = 0.0, er = 0.0, l1l = 0.0, l1r = 0.0;
  const double left = GK15::integrate(f, a, m, 0, 0.0, &el, &l1l);
  const double right = GK15::integrate(f, m, b, 0, 0.0, &er, &l1r);
  return adaptive_gk(f, a, m, left, el, l1l, 0.5 * abs_tol, depth - 1) +
         adaptive_gk(f, m, b, right, er, l1r, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

/// Adaptive 15-point Gauss-Kronrod with an absolute error target: panels
/// whose Kronrod error estimate exceeds their share of `abs_tol` are bisected.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-12,
                          unsigned max_depth = 24) {
  if (b <= a) return 0.0;
  double err = 0.0, l1 = 0.0;
  const double whole = detail::GK15::integrate(f, a, b, 0, 0.0, &err, &l1);
  return detail::adaptive_gk(f, a, b, whole, err, l1, abs_tol, max_depth);
}

}  // namespace zetadrive::quad
