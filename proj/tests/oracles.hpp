#pragma once

// Independent reference implementations used only by the tests. They share
// no code paths with the library beyond its public types.

#include <zetadrive/floquet.hpp>
#include <zetadrive/waveform.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// zeta(1/2 + iE) by Euler-Maclaurin summation with N = 60 + |E| terms.
inline cplx zeta_em(double E) {
  const cplx s(0.5, E);
  const int N = 60 + static_cast<int>(std::abs(E));
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double lN = std::log(static_cast<double>(N));
  const cplx Ns = std::exp(-s * lN);
  sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  // B_{2k} / (2k)!
  const double b[] = {1.0 / 12.0,        -1.0 / 720.0,        1.0 / 30240.0,
                      -1.0 / 1209600.0,  1.0 / 47900160.0,    -691.0 / 1307674368000.0,
                      1.0 / 74724249600.0};
  cplx rising = s;  // s (s+1) ... (s+2k-2)
  cplx power = Ns / static_cast<double>(N);  // N^{-s-1}
  for (int k = 0; k < 7; ++k) {
    sum += b[k] * rising * power;
    rising *= (s + (2.0 * k + 1.0)) * (s + (2.0 * k + 2.0));
    power /= static_cast<double>(N) * N;
  }
  return sum;
}

/// Plain composite Gauss-Legendre on [a, b].
template <class F>
double gl(F&& f, double a, double b, int panels, int order = 20) {
  return zetadrive::quad::integrate_composite(f, a, b, panels, order);
}

/// Integral of vdp(t) cos(E t) over [0, t_max], one Gauss-Legendre block
/// per smooth piece [ln k, ln(k+1)).
inline double vdp_cosine_bruteforce(double E, double t_max) {
  double sum = 0.0;
  for (double k = 1.0;; k += 1.0) {
    const double a = std::log(k);
    if (a >= t_max) break;
    const double b = std::min(std::log(k + 1.0), t_max);
    auto f = [&](double t) { return (std::exp(0.5 * t) - k * std::exp(-0.5 * t)) * std::cos(E * t); };
    const int panels = 2 + static_cast<int>((b - a) * (std::abs(E) + 1.0));
    sum += gl(f, a, b, panels);
  }
  return sum;
}

/// b_k by direct quadrature of primitive_F on every smooth piece of [0, T].
inline std::vector<double> sine_coefficients_bruteforce(const zetadrive::DrivingSpec& spec) {
  const double T = spec.T();
  std::vector<double> edges{0.0};
  for (double b : zetadrive::primitive_breakpoints(spec)) edges.push_back(b);
  edges.push_back(T);
  std::vector<double> b(spec.n_terms, 0.0);
  const double rate = spec.n_terms * std::numbers::pi / T + std::abs(spec.E) * spec.window_scale;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    const int panels = 2 + static_cast<int>((hi - lo) * rate / 4.0);
    for (int k = 1; k <= spec.n_terms; ++k) {
      auto f = [&](double t) {
        return zetadrive::primitive_F(t, spec) * std::sin(k * std::numbers::pi * t / T);
      };
      b[k - 1] += gl(f, lo, hi, panels);
    }
  }
  for (double& v : b) v *= 2.0 / T;
  return b;
}

/// 2x2 matrix exponential exp(-i H dt) for Hermitian H by scaling and
/// squaring a Taylor series; independent of the closed-form SU(2) rule.
inline zetadrive::Mat2 expm_taylor(const zetadrive::Mat2& H, double dt) {
  using zetadrive::Mat2;
  const cplx mi(0.0, -dt);
  Mat2 A{mi * H.m00, mi * H.m01, mi * H.m10, mi * H.m11};
  int squarings = 0;
  while (A.max_abs() > 0.05) {
    A = Mat2{0.5 * A.m00, 0.5 * A.m01, 0.5 * A.m10, 0.5 * A.m11};
    ++squarings;
  }
  Mat2 term = Mat2::identity(), sum = Mat2::identity();
  for (int k = 1; k < 20; ++k) {
    term = term * A;
    const double inv = 1.0 / k;
    term = Mat2{term.m00 * inv, term.m01 * inv, term.m10 * inv, term.m11 * inv};
    sum = Mat2{sum.m00 + term.m00, sum.m01 + term.m01, sum.m10 + term.m10, sum.m11 + term.m11};
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// Primes up to n by trial division.
inline std::int64_t prime_count_trial(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t m = 2; m <= n; ++m) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        prime = false;
        break;
      }
    }
    c += prime ? 1 : 0;
  }
  return c;
}

}  // namespace oracle
