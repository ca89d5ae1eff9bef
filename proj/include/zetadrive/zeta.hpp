#pragma once

// Ground-truth evaluation of zeta on the critical line, the scaled function
// g(E) = -zeta(1/2 + iE) / (1/2 + iE), van der Pol's transform of g, and the
// catalogue of exact zero heights.

#include <zetadrive/errors.hpp>
#include <zetadrive/quadrature.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace zetadrive {

using cplx = std::complex<double>;

/// Largest |E| for which zeta_critical is validated.
inline constexpr double kZetaMaxHeight = 500.0;

struct CriticalPoint {
  double E;
  cplx s;
  cplx zeta;
  cplx g;
};

struct VdpSample {
  double t;
  double value;
};

namespace detail {

/// Borwein's accelerated alternating series for eta(s), s = 1/2 + iE.
/// The weights 1 - d_k/d_n are built from log-space term ratios so that
/// nothing overflows even for n ~ 900.
inline cplx eta_half_line(double E) {
  const double t = std::abs(E);
  const double log_base = std::log(3.0 + std::sqrt(8.0));
  // Error bound ~ 3 (1 + 2|t|) e^{pi |t|} / (sqrt(2 pi) (3 + sqrt 8)^n).
  const double need = std::numbers::pi * t + std::log(3.0 * (1.0 + 2.0 * t)) + 37.0;
  const int n = std::max(24, static_cast<int>(std::ceil(need / log_base)));

  std::vector<double> log_term(n + 1);
  log_term[0] = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double ratio = 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    log_term[i] = log_term[i - 1] + std::log(ratio);
  }
  double log_max = log_term[0];
  for (double v : log_term) log_max = std::max(log_max, v);

  // tail[k] = sum_{i > k} term_i, all scaled by e^{-log_max}.
  std::vector<double> tail(n + 1, 0.0);
  double acc = 0.0;
  for (int i = n; i >= 0; --i) {
    tail[i] = acc;
    acc += std::exp(log_term[i] - log_max);
  }
  const double total = acc;

  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = tail[k] / total;
    const double l = std::log(k + 1.0);
    const double mag = std::exp(-0.5 * l) * w;
    const double ph = -E * l;
    const cplx term(mag * std::cos(ph), mag * std::sin(ph));
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace detail

/// zeta(1/2 + iE) for |E| <= 500, absolute error below 1e-10.
inline cplx zeta_critical(double E) {
  if (!(std::abs(E) <= kZetaMaxHeight)) {
    throw DomainError("zeta_critical: |E| must be <= 500 (got " + std::to_string(E) + ")");
  }
  const cplx s(0.5, E);
  const cplx eta = detail::eta_half_line(E);
  // eta(s) = (1 - 2^{1-s}) zeta(s)
  const cplx factor = 1.0 - std::exp((1.0 - s) * std::numbers::ln2);
  return eta / factor;
}

/// g(E) = -zeta(1/2 + iE) / (1/2 + iE).
inline cplx g_value(double E) {
  const cplx s(0.5, E);
  return -zeta_critical(E) / s;
}

inline CriticalPoint critical_point(double E) {
  const cplx s(0.5, E);
  const cplx z = zeta_critical(E);
  return {E, s, z, -z / s};
}

/// Integer part of e^t, consistent with breakpoints computed as std::log(k):
/// the largest m with std::log(m) <= t. Valid for e^t < 2^52.
inline double floor_exp(double t) {
  const double u = std::exp(t);
  double m = std::floor(u);
  if (std::log(m + 1.0) <= t) {
    m += 1.0;
  } else if (m >= 2.0 && std::log(m) > t) {
    m -= 1.0;
  }
  return m;
}

/// van der Pol's transform of g: e^{t/2} for t < 0 and
/// e^{t/2} - e^{-t/2} floor(e^t) for t >= 0 (right-continuous at t = ln k).
inline double vdp(double t) {
  if (t < 0.0) return std::exp(0.5 * t);
  if (t >= 36.0) {
    // floor(e^t) is no longer representable; only the envelope survives.
    const double u = std::exp(t);
    const double frac = u - std::floor(u);
    return std::exp(-0.5 * t) * frac;
  }
  const double m = floor_exp(t);
  const double v = std::exp(0.5 * t) - m * std::exp(-0.5 * t);
  return v > 0.0 ? v : 0.0;
}

inline VdpSample vdp_sample(double t) { return {t, vdp(t)}; }

namespace detail {

/// d^m/du^m of u^a at u.
inline cplx power_derivative(double u, cplx a, int m) {
  cplx coeff = 1.0;
  for (int j = 0; j < m; ++j) coeff *= (a - static_cast<double>(j));
  return coeff * std::exp((a - static_cast<double>(m)) * std::log(u));
}

/// d^m/du^m of Re[u^a] at u, a = -3/2 + iE.
inline double phi_derivative(double u, double E, int m) {
  return power_derivative(u, cplx(-1.5, E), m).real();
}

/// Integral over u in [lo, hi] (integers, lo >= 8 |a|) of frac(u) u^a for
/// Re a < -1. Mean part in closed form; the sawtooth part by its Bernoulli
/// expansion.
inline cplx frac_power_integral(double lo, double hi, cplx a) {
  const cplx a1 = a + 1.0;
  auto prim = [&](double u) { return std::exp(a1 * std::log(u)) / a1; };
  cplx total = 0.5 * (prim(hi) - prim(lo));
  // sum_j B_{2j}/(2j)! [phi^{(2j-2)}]
  constexpr std::array<double, 5> bern = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                          -1.0 / 1209600.0, 1.0 / 47900160.0};
  for (int j = 0; j < static_cast<int>(bern.size()); ++j) {
    const int m = 2 * j;
    total += bern[j] * (power_derivative(hi, a, m) - power_derivative(lo, a, m));
  }
  return total;
}

/// Integral over u in [lo, hi] (integers) of frac(u) u^{-3/2} cos(E ln u).
inline double vdp_tail_integral(double lo, double hi, double E) {
  return frac_power_integral(lo, hi, cplx(-1.5, E)).real();
}

/// Integral of (e^{t/2} - k e^{-t/2}) cos(E t) over [a, b] inside one smooth piece.
inline double vdp_piece_integral(double a, double b, double k, double E) {
  if (b <= a) return 0.0;
  auto f = [k, E](double t) {
    return (std::exp(0.5 * t) - k * std::exp(-0.5 * t)) * std::cos(E * t);
  };
  return quad::integrate_adaptive(f, a, b, 1e-11);
}

}  // namespace detail

/// Integral of vdp(t) cos(E t) over [0, t_max], without the 2/(4E^2 + 1)
/// contribution of the t < 0 half-line.
inline double vdp_cosine_integral(double E, double t_max) {
  if (!(t_max > 0.0)) throw DomainError("re_g_via_vdp: t_max must be > 0");
  // Pieces [ln k, ln(k+1)) are integrated adaptively up to ln(n_head);
  // beyond that the sawtooth expansion in u = e^t is accurate.
  const double n_head = std::max(1024.0, std::ceil(8.0 * std::abs(E)));
  const double t_head = std::min(t_max, std::log(n_head));

  double sum = 0.0;
  double a = 0.0;
  for (double k = 1.0;; k += 1.0) {
    const double b = std::min(std::log(k + 1.0), t_head);
    sum += detail::vdp_piece_integral(a, b, k, E);
    if (b >= t_head) break;
    a = b;
  }
  if (t_max <= t_head) return sum;

  const double u_max = std::exp(t_max);
  if (u_max < 4.0e15) {
    const double m = floor_exp(t_max);
    sum += detail::vdp_tail_integral(n_head, m, E);
    sum += detail::vdp_piece_integral(std::log(m), t_max, m, E);
  } else {
    // The final partial piece is below u^{-3/2} and drops out.
    sum += detail::vdp_tail_integral(n_head, u_max, E);
  }
  return sum;
}

/// Re g(E) = 2/(4E^2 + 1) + integral_0^{t_max} vdp(t) cos(E t) dt.
/// Truncation error is O(e^{-t_max/2}).
inline double re_g_via_vdp(double E, double t_max) {
  return 2.0 / (4.0 * E * E + 1.0) + vdp_cosine_integral(E, t_max);
}

/// Heights of the first 80 non-trivial zeros, rounded to three decimals.
inline constexpr std::array<double, 80> kKnownZeros = {
    14.135,  21.022,  25.011,  30.425,  32.935,  37.586,  40.919,  43.327,
    48.005,  49.774,  52.970,  56.446,  59.347,  60.832,  65.113,  67.080,
    69.546,  72.067,  75.705,  77.145,  79.337,  82.910,  84.735,  87.425,
    88.809,  92.492,  94.651,  95.871,  98.831,  101.318, 103.726, 105.447,
    107.169, 111.030, 111.875, 114.320, 116.227, 118.791, 121.370, 122.947,
    124.257, 127.517, 129.579, 131.088, 133.498, 134.757, 138.116, 139.736,
    141.124, 143.112, 146.001, 147.423, 150.054, 150.925, 153.025, 156.113,
    157.598, 158.850, 161.189, 163.031, 165.537, 167.184, 169.095, 169.912,
    173.412, 174.754, 176.441, 178.377, 179.916, 182.207, 184.874, 185.599,
    187.229, 189.416, 192.027, 193.080, 195.265, 196.876, 198.015, 201.265};

inline std::span<const double> known_zeros() { return kKnownZeros; }

}  // namespace zetadrive
