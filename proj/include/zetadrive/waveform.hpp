#pragma once

// Driving-waveform synthesis: the primitive F(t) = arccos(vdp(t) cos(E t))
// on [0, T], its Fourier sine series, and the even 2T-periodic driving
// function f = dF/dt obtained by termwise differentiation.

#include <zetadrive/errors.hpp>
#include <zetadrive/quadrature.hpp>
#include <zetadrive/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace zetadrive {

/// All parameters of one simulated drive configuration. Energies are in
/// units of the bare tunneling, times in units of its inverse.
struct DrivingSpec {
  double E = 0.0;        // zeta height encoded by the drive
  double omega = 8.0;    // driving angular frequency
  double J = 1.0;        // bare tunneling
  int n_terms = 500;     // sine-series truncation
  int quad_points = 512; // Gauss-Legendre nodes per full-length smooth piece
  int substeps = 8192;   // propagation steps per fundamental period 2T
  // van der Pol time elapsed per unit of dynamical time. The drive segment
  // [0, T] samples vdp over [0, window_scale * T].
  double window_scale = 2.0 * std::numbers::pi;

  /// Half of the fundamental period; the synthesis segment is [0, T].
  double T() const { return 2.0 * std::numbers::pi / omega; }
  /// Fundamental period of the even, reconstructed drive.
  double period() const { return 2.0 * T(); }

  void validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw UsageError("omega must be > 0");
    if (!(J > 0.0) || !std::isfinite(J)) throw UsageError("J must be > 0");
    if (n_terms < 1) throw UsageError("n_terms must be >= 1");
    if (quad_points < 1) throw UsageError("quad_points must be >= 1");
    if (substeps < 2 * n_terms) throw UsageError("substeps must be >= 2 * n_terms");
    if (substeps % 2 != 0) throw UsageError("substeps must be even");
    if (!(window_scale > 0.0) || !std::isfinite(window_scale)) {
      throw UsageError("window_scale must be > 0");
    }
    if (!std::isfinite(E)) throw UsageError("E must be finite");
  }
};

namespace detail {

/// sum_k coeff[k-1] * sin(k theta), k = 1..K, by complex rotation.
inline double sine_sum(std::span<const double> coeff, double theta) {
  const std::complex<double> step(std::cos(theta), std::sin(theta));
  std::complex<double> z = step;
  double s = 0.0;
  for (double c : coeff) {
    s += c * z.imag();
    z *= step;
  }
  return s;
}

inline double cosine_sum(std::span<const double> coeff, double theta) {
  const std::complex<double> step(std::cos(theta), std::sin(theta));
  std::complex<double> z = step;
  double s = 0.0;
  for (double c : coeff) {
    s += c * z.real();
    z *= step;
  }
  return s;
}

}  // namespace detail

/// Sine-series representation of the drive primitive on [0, T]; immutable
/// once built and safe to share between threads.
class FourierWaveform {
 public:
  FourierWaveform(DrivingSpec spec, std::vector<double> sine_coeffs)
      : spec_(spec), b_(std::move(sine_coeffs)) {
    spec_.validate();
    if (static_cast<int>(b_.size()) != spec_.n_terms) {
      throw UsageError("FourierWaveform: coefficient count must equal n_terms");
    }
    const double base = std::numbers::pi / spec_.T();
    c_.resize(b_.size());
    for (std::size_t k = 0; k < b_.size(); ++k) c_[k] = b_[k] * base * static_cast<double>(k + 1);
  }

  const DrivingSpec& spec() const { return spec_; }
  /// Sine coefficients b_k of F, k = 1..n_terms.
  std::span<const double> sine_coefficients() const { return b_; }
  /// Cosine coefficients c_k = b_k k pi / T of f.
  std::span<const double> cosine_coefficients() const { return c_; }

  /// Odd, 2T-periodic series primitive.
  double F(double t) const {
    return detail::sine_sum(b_, std::numbers::pi * t / spec_.T());
  }

  /// Even, 2T-periodic driving function.
  double f(double t) const {
    const double p = spec_.period();
    const double r = std::fmod(std::abs(t), p);
    return detail::cosine_sum(c_, std::numbers::pi * r / spec_.T());
  }

 private:
  DrivingSpec spec_;
  std::vector<double> b_;
  std::vector<double> c_;
};

/// arccos(vdp(s t) cos(E s t)) for t in [0, T], s = spec.window_scale.
inline double primitive_F(double t, const DrivingSpec& spec) {
  const double T = spec.T();
  if (!(t >= 0.0 && t <= T)) {
    throw DomainError("primitive_F: t must lie in [0, T] (T = " + std::to_string(T) + ")");
  }
  const double tau = spec.window_scale * t;
  const double arg = std::clamp(vdp(tau) * std::cos(spec.E * tau), -1.0, 1.0);
  return std::acos(arg);
}

/// Discontinuities of vdp(s t) inside (0, T): t = ln m / s. There are about
/// e^{sT} of them, so the list is refused beyond `max_count` entries.
inline std::vector<double> primitive_breakpoints(const DrivingSpec& spec,
                                                 double max_count = 1e7) {
  std::vector<double> out;
  const double T = spec.T();
  if (spec.window_scale * T > std::log(max_count)) {
    throw DomainError("primitive_breakpoints: more than " + std::to_string(max_count) +
                      " discontinuities in [0, T]");
  }
  for (double m = 2.0;; m += 1.0) {
    const double t = std::log(m) / spec.window_scale;
    if (t >= T) break;
    out.push_back(t);
  }
  return out;
}

namespace detail {

/// Integral over tau in [tau_lo, tau_hi] of vdp(tau) exp(i w tau), for
/// e^{tau_lo} an integer >= 8 |w|; beyond that point the sawtooth expansion
/// in u = e^tau is used instead of piece-by-piece quadrature.
inline cplx vdp_fourier_tail(double u_lo, double tau_hi, double w) {
  const cplx a(-1.5, w);
  const double u_hi = std::exp(tau_hi);
  if (u_hi >= 4.0e15) return frac_power_integral(u_lo, u_hi, a);  // last piece < u^{-3/2}
  const double m = floor_exp(tau_hi);
  if (m <= u_lo) {
    // Only a partial piece: integral of (u - m0) u^a over [u_lo, u_hi].
    const cplx a1 = a + 1.0, a2 = a + 2.0;
    auto prim = [&](double u) {
      return std::exp(a2 * std::log(u)) / a2 - u_lo * std::exp(a1 * std::log(u)) / a1;
    };
    return prim(u_hi) - prim(u_lo);
  }
  const cplx a1 = a + 1.0, a2 = a + 2.0;
  auto partial = [&](double u) {
    return std::exp(a2 * std::log(u)) / a2 - m * std::exp(a1 * std::log(u)) / a1;
  };
  return frac_power_integral(u_lo, m, a) + partial(u_hi) - partial(m);
}

}  // namespace detail

/// b_k = (2/T) int_0^T F(t) sin(k pi t / T) dt, k = 1..n_terms.
///
/// Up to the point where vdp(s t) < u_head^{-1/2} the integral is done by
/// composite Gauss-Legendre on each smooth piece between discontinuities.
/// Past it, arccos(x) = pi/2 - x + O(x^3) and the remaining integral of
/// vdp(s t) cos(E s t) sin(k pi t / T) is evaluated through the sawtooth
/// expansion, so long windows with e^{sT} discontinuities stay cheap.
inline FourierWaveform sine_coefficients(const DrivingSpec& spec) {
  spec.validate();
  const double T = spec.T();
  const double s = spec.window_scale;
  const int K = spec.n_terms;
  constexpr int kOrder = 16;

  // Largest frequency in tau = s t of vdp(tau) cos(E tau) sin(k pi tau / (sT)).
  const double kappa_max = K * std::numbers::pi / (s * T);
  const double w_max = std::abs(spec.E) + kappa_max;
  const double u_head = std::max(1024.0, std::ceil(8.0 * w_max));
  const double tau_end = s * T;
  const bool has_tail = std::log(u_head) < tau_end;
  const double t_head = has_tail ? std::log(u_head) / s : T;

  std::vector<double> edges{0.0};
  for (double m = 2.0; m < u_head; m += 1.0) {
    const double t = std::log(m) / s;
    if (t >= t_head) break;
    edges.push_back(t);
  }
  edges.push_back(t_head);

  // Highest angular rate in t of the head integrand.
  const double rate = K * std::numbers::pi / T + std::abs(spec.E) * s;

  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const double len = b - a;
    const int by_budget = static_cast<int>(std::ceil(spec.quad_points * len / (kOrder * T)));
    const int by_rate = static_cast<int>(std::ceil(len * rate / 8.0));
    quad::append_composite(a, b, std::max({1, by_budget, by_rate}), kOrder, nodes, weights);
  }

  // Interior nodes only, so the right-continuous vdp is always sampled
  // strictly inside a smooth piece.
  std::vector<double> coeffs(K, 0.0);
  const double base = std::numbers::pi / T;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double wf = weights[j] * primitive_F(nodes[j], spec);
    const std::complex<double> step(std::cos(base * nodes[j]), std::sin(base * nodes[j]));
    std::complex<double> z = step;
    for (int k = 0; k < K; ++k) {
      coeffs[k] += wf * z.imag();
      z *= step;
    }
  }
  for (double& c : coeffs) c *= 2.0 / T;

  if (has_tail) {
    for (int k = 1; k <= K; ++k) {
      const double kappa = k * std::numbers::pi / (s * T);
      const double flat = (std::cos(base * k * t_head) - ((k % 2 == 0) ? 1.0 : -1.0)) / k;
      // cos(E tau) sin(kappa tau) = [sin((kappa + E) tau) + sin((kappa - E) tau)] / 2
      const double osc = detail::vdp_fourier_tail(u_head, tau_end, kappa + spec.E).imag() +
                         detail::vdp_fourier_tail(u_head, tau_end, kappa - spec.E).imag();
      coeffs[k - 1] += flat - osc / (s * T);
    }
  }
  return FourierWaveform(spec, std::move(coeffs));
}

inline double driving_f(double t, const FourierWaveform& w) { return w.f(t); }

/// Uniform samples of f over one full period [0, 2T).
struct WaveformTable {
  std::vector<double> t;
  std::vector<double> f;
};

inline WaveformTable export_waveform(const FourierWaveform& w, int n_samples) {
  if (n_samples < 2) throw UsageError("export_waveform: n_samples must be >= 2");
  WaveformTable out;
  out.t.reserve(n_samples);
  out.f.reserve(n_samples);
  const double step = w.spec().period() / n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const double t = i * step;
    out.t.push_back(t);
    out.f.push_back(w.f(t));
  }
  return out;
}

/// Drive with f(t) = amplitude cos(omega t): only the k = 2 harmonic.
inline FourierWaveform monochromatic_waveform(DrivingSpec spec, double amplitude) {
  spec.validate();
  std::vector<double> b(spec.n_terms, 0.0);
  if (spec.n_terms < 2) throw UsageError("monochromatic_waveform: n_terms must be >= 2");
  b[1] = amplitude / spec.omega;
  return FourierWaveform(spec, std::move(b));
}

inline FourierWaveform zero_waveform(DrivingSpec spec) {
  return FourierWaveform(spec, std::vector<double>(spec.n_terms, 0.0));
}

}  // namespace zetadrive
