#pragma once

// One-period propagation of H(t) = J (sigma_x + f(t) sigma_z / 2), Floquet
// spectrum of the resulting SU(2) propagator, and the first-order
// effective tunneling.

#include <zetadrive/errors.hpp>
#include <zetadrive/quadrature.hpp>
#include <zetadrive/waveform.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace zetadrive {

/// 2x2 complex matrix, row major: [[m00, m01], [m10, m11]].
struct Mat2 {
  cplx m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

  static Mat2 identity() { return {}; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }

  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  cplx det() const { return m00 * m11 - m01 * m10; }

  double max_abs() const {
    return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
  }

  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
  }
};

/// exp(-i theta (nx sx + ny sy + nz sz)) for a unit vector n.
inline Mat2 su2_exp(double theta, double nx, double ny, double nz) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {cplx(c, -s * nz), cplx(-s * ny, -s * nx), cplx(s * ny, -s * nx), cplx(c, s * nz)};
}

/// exp(-i dt (hx sx + hz sz)).
inline Mat2 step_exp(double hx, double hz, double dt) {
  const double norm = std::hypot(hx, hz);
  if (norm == 0.0) return Mat2::identity();
  return su2_exp(norm * dt, hx / norm, 0.0, hz / norm);
}

struct PeriodPropagator {
  Mat2 U;
  double period = 0.0;
  DrivingSpec spec;
};

struct FloquetSpectrum {
  double epsilon = 0.0;  // folded to [0, pi / period]
  double period = 0.0;
  cplx a{1.0};           // Phi_1 = a|0> + b|1>, a real and >= 0
  cplx b{0.0};
  cplx lambda_plus{1.0};   // exp(-i period epsilon), eigenvalue of Phi_1
  cplx lambda_minus{1.0};  // exp(+i period epsilon), eigenvalue of Phi_2

  /// Phi_2 = b*|0> - a*|1>.
  cplx a2() const { return std::conj(b); }
  cplx b2() const { return -std::conj(a); }

  /// U^n = V diag(lambda_+^n, lambda_-^n) V^dagger with exact phase powers.
  Mat2 power(long n) const {
    const double ph = static_cast<double>(n) * period * epsilon;
    const cplx lp = std::polar(1.0, -ph);
    const cplx lm = std::polar(1.0, ph);
    // Columns of V are Phi_1 and Phi_2.
    const cplx v00 = a, v10 = b, v01 = a2(), v11 = b2();
    return {lp * v00 * std::conj(v00) + lm * v01 * std::conj(v01),
            lp * v00 * std::conj(v10) + lm * v01 * std::conj(v11),
            lp * v10 * std::conj(v00) + lm * v11 * std::conj(v01),
            lp * v10 * std::conj(v10) + lm * v11 * std::conj(v11)};
  }
};

struct EffectiveTunneling {
  cplx value;
  DrivingSpec spec;
};

namespace detail {

/// f at the midpoints t_m = (m + 1/2) dt of [0, 2T], using f(2T - t) = f(t).
inline std::vector<double> midpoint_drive(const FourierWaveform& w, int steps) {
  const DrivingSpec& spec = w.spec();
  const double dt = spec.period() / steps;
  std::vector<double> f(steps);
  const auto c = w.cosine_coefficients();
  const int half = steps / 2;
  for (int m = 0; m < half; ++m) {
    f[m] = detail::cosine_sum(c, std::numbers::pi * (m + 0.5) * dt / spec.T());
    f[steps - 1 - m] = f[m];
  }
  return f;
}

}  // namespace detail

/// Step rule for the lab-frame propagator.
enum class Integrator {
  midpoint,  // exp(-i H(t_mid) dt): second order
  magnus4,   // commutator-free fourth-order pair of exponentials at Gauss points
};

/// Time-ordered product over substeps [first_step, last_step) of a grid of
/// `substeps` equal steps covering [0, 2T].
inline Mat2 propagate_steps(const FourierWaveform& w, int first_step, int last_step,
                            int substeps, Integrator scheme = Integrator::midpoint) {
  const DrivingSpec& spec = w.spec();
  const double dt = spec.period() / substeps;
  const double J = spec.J;
  Mat2 U = Mat2::identity();
  if (scheme == Integrator::midpoint) {
    const auto f = detail::midpoint_drive(w, substeps);
    for (int m = first_step; m < last_step; ++m) U = step_exp(J, 0.5 * J * f[m], dt) * U;
    return U;
  }
  const double r = std::sqrt(3.0) / 6.0;
  const double a1 = 0.25 + r, a2 = 0.25 - r;
  const auto c = w.cosine_coefficients();
  const double base = std::numbers::pi * dt / spec.T();
  for (int m = first_step; m < last_step; ++m) {
    const double f1 = detail::cosine_sum(c, base * (m + 0.5 - r));
    const double f2 = detail::cosine_sum(c, base * (m + 0.5 + r));
    const Mat2 first = step_exp(0.5 * J, 0.5 * J * (a1 * f1 + a2 * f2), dt);
    const Mat2 second = step_exp(0.5 * J, 0.5 * J * (a2 * f1 + a1 * f2), dt);
    U = second * first * U;
  }
  return U;
}

/// One fundamental period 2T; `substeps` <= 0 means spec.substeps.
inline PeriodPropagator propagate_period(const FourierWaveform& w, int substeps = 0,
                                         Integrator scheme = Integrator::midpoint) {
  const DrivingSpec& spec = w.spec();
  const int n = substeps > 0 ? substeps : spec.substeps;
  if (n % 2 != 0) throw UsageError("propagate_period: substeps must be even");
  return {propagate_steps(w, 0, n, n, scheme), spec.period(), spec};
}

/// Phase function for the rotating-frame integrator: the accumulated drive
/// phase Phi(t) on [0, 2T] and its discontinuities.
struct PhaseProfile {
  std::function<double(double)> phase;
  std::vector<double> breakpoints;  // strictly inside (0, 2T)
};

/// Drive phase from the truncated sine series (smooth, no breakpoints).
inline PhaseProfile series_phase(const FourierWaveform& w) {
  return {[&w](double t) { return w.F(t); }, {}};
}

/// Un-truncated odd 2T-periodic extension of primitive_F, with F(0) := 0
/// at the jump (the midpoint the series converges to).
inline PhaseProfile exact_phase(const DrivingSpec& spec) {
  const double T = spec.T();
  PhaseProfile p;
  p.phase = [spec, T](double t) {
    if (t <= 0.0 || t >= 2.0 * T) return 0.0;
    if (t < T) return primitive_F(t, spec);
    if (t == T) return 0.0;
    return -primitive_F(2.0 * T - t, spec);
  };
  for (double b : primitive_breakpoints(spec)) p.breakpoints.push_back(b);
  p.breakpoints.push_back(T);
  for (double b : primitive_breakpoints(spec)) p.breakpoints.push_back(2.0 * T - b);
  std::sort(p.breakpoints.begin(), p.breakpoints.end());
  return p;
}

/// Rotating-frame cross-check: with psi = exp(-i J Phi sz / 2) phi the
/// sigma_z drive is removed and H' = J (cos(J Phi) sx - sin(J Phi) sy) has
/// norm J. Midpoint steps within each smooth piece; since Phi vanishes at
/// both ends of the period the result equals the lab-frame propagator.
inline Mat2 propagate_rotating(const DrivingSpec& spec, const PhaseProfile& profile,
                               double steps_per_unit_time) {
  std::vector<double> edges{0.0};
  for (double b : profile.breakpoints) edges.push_back(b);
  edges.push_back(spec.period());
  Mat2 U = Mat2::identity();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) * steps_per_unit_time)));
    const double dt = (b - a) / n;
    for (int m = 0; m < n; ++m) {
      const double ph = spec.J * profile.phase(a + (m + 0.5) * dt);
      U = su2_exp(spec.J * dt, std::cos(ph), -std::sin(ph), 0.0) * U;
    }
  }
  return U;
}

inline double unitarity_defect(const Mat2& U) {
  return (U.adjoint() * U - Mat2::identity()).max_abs();
}

/// Spectral decomposition of a one-period SU(2) propagator.
inline FloquetSpectrum quasienergies(const Mat2& U, double period) {
  if (!(period > 0.0)) throw UsageError("quasienergies: period must be > 0");
  if (unitarity_defect(U) > 1e-8 || std::abs(U.det() - 1.0) > 1e-8) {
    throw InvariantError("quasienergies: propagator is not in SU(2)");
  }
  // U = cos(phi) I - i sin(phi) n.sigma
  const double mz = 0.5 * (U.m11.imag() - U.m00.imag());
  const double mx = -0.5 * (U.m01.imag() + U.m10.imag());
  const double my = 0.5 * (U.m10.real() - U.m01.real());
  const double c = 0.5 * (U.m00.real() + U.m11.real());
  const double sn = std::sqrt(mx * mx + my * my + mz * mz);
  const double phi = std::atan2(sn, c);  // in [0, pi]

  FloquetSpectrum out;
  out.period = period;
  out.epsilon = phi / period;
  out.lambda_plus = std::polar(1.0, -phi);
  out.lambda_minus = std::polar(1.0, phi);
  if (sn > 0.0) {
    const double nx = mx / sn, ny = my / sn, nz = std::clamp(mz / sn, -1.0, 1.0);
    out.a = std::sqrt(0.5 * (1.0 + nz));
    out.b = std::polar(std::sqrt(0.5 * (1.0 - nz)), std::atan2(ny, nx));
  }
  return out;
}

inline FloquetSpectrum quasienergies(const PeriodPropagator& p) {
  return quasienergies(p.U, p.period);
}

/// J_eff = (J / 2T) int_0^{2T} exp(-i J F(t)) dt over the series primitive.
inline EffectiveTunneling effective_tunneling(const FourierWaveform& w) {
  const DrivingSpec& spec = w.spec();
  const int panels = 2 * std::max(spec.n_terms, 16);
  const auto b = w.sine_coefficients();
  const double base = std::numbers::pi / spec.T();
  auto re = [&](double t) { return std::cos(spec.J * detail::sine_sum(b, base * t)); };
  auto im = [&](double t) { return -std::sin(spec.J * detail::sine_sum(b, base * t)); };
  const double P = spec.period();
  const double r = quad::integrate_composite(re, 0.0, P, panels);
  const double i = quad::integrate_composite(im, 0.0, P, panels);
  return {cplx(r, i) * (spec.J / P), spec};
}

/// |epsilon - |J_eff||, with |J_eff| folded into the same Brillouin zone.
inline double high_frequency_check(const FourierWaveform& w, const FloquetSpectrum& spec) {
  const double P = spec.period;
  const double jeff = std::abs(effective_tunneling(w).value);
  double ph = std::fmod(jeff * P, 2.0 * std::numbers::pi);
  if (ph > std::numbers::pi) ph = 2.0 * std::numbers::pi - ph;
  return std::abs(spec.epsilon - ph / P);
}

inline double high_frequency_check(const FourierWaveform& w) {
  return high_frequency_check(w, quasienergies(propagate_period(w)));
}

}  // namespace zetadrive
