#pragma once

// Stroboscopic measurement protocol: start in |0>, apply n fundamental
// periods, project on |i> = (|0> + i|1>)/sqrt(2), optionally add binomial
// shot noise, and reduce the population curve to the S parameter.

#include <zetadrive/errors.hpp>
#include <zetadrive/floquet.hpp>
#include <zetadrive/parallel.hpp>
#include <zetadrive/rng.hpp>
#include <zetadrive/waveform.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace zetadrive {

inline const std::vector<int>& default_n_list() {
  static const std::vector<int> n{5, 10, 15, 20, 25, 30};
  return n;
}

struct PopulationCurve {
  DrivingSpec spec;
  std::vector<int> n_list;
  std::vector<double> P;
  double A = 0.0;  // Re{a b*}
  FloquetSpectrum spectrum;
};

struct ShotSample {
  std::vector<double> P_hat;
  std::vector<double> sigma;
};

struct SParameter {
  double S = 0.0;
  double deltaS = 0.0;
};

struct ScanRecord {
  double E = 0.0;
  double omega = 0.0;
  double S = 0.0;
  double deltaS = 0.0;
  int shots = 0;  // 0 = noise-free
  std::vector<double> P_hat;
  std::uint64_t seed = 0;
  std::string error;  // non-empty if this grid point failed

  bool ok() const { return error.empty(); }
};

/// |<i| U^n |0>|^2 for each n, with U^n from the spectral decomposition.
inline PopulationCurve populations(const FloquetSpectrum& spectrum, const DrivingSpec& spec,
                                   const std::vector<int>& n_list = default_n_list()) {
  if (n_list.empty()) throw UsageError("populations: n_list must be non-empty");
  PopulationCurve out{spec, n_list, {}, 0.0, spectrum};
  out.A = (spectrum.a * std::conj(spectrum.b)).real();
  out.P.reserve(n_list.size());
  for (int n : n_list) {
    if (n < 0) throw UsageError("populations: period counts must be >= 0");
    const Mat2 Un = spectrum.power(n);
    // <i| = (<0| - i <1|) / sqrt(2) applied to U^n |0> = (U00, U10).
    const cplx amp = (Un.m00 - cplx(0.0, 1.0) * Un.m10) / std::sqrt(2.0);
    out.P.push_back(std::clamp(std::norm(amp), 0.0, 1.0));
  }
  return out;
}

inline PopulationCurve populations(const FourierWaveform& w,
                                   const std::vector<int>& n_list = default_n_list()) {
  return populations(quasienergies(propagate_period(w)), w.spec(), n_list);
}

/// 1/2 - (n_x / 2) sin(2 n phi) + n_y n_z sin^2(n phi), phi = period * epsilon,
/// with n the rotation axis of U. For a time-symmetric drive n_y = 0 and the
/// curve reduces to 1/2 - A sin(2 n phi).
inline double population_closed_form(const FloquetSpectrum& s, int n) {
  const double phi = s.period * s.epsilon;
  const double A = (s.a * std::conj(s.b)).real();
  const double ny_nz = -2.0 * (s.a * std::conj(s.b)).imag() * (2.0 * std::norm(s.a) - 1.0);
  const double sn = std::sin(n * phi);
  return 0.5 - A * std::sin(2.0 * n * phi) + ny_nz * sn * sn;
}

/// Binomial(shots, P) / shots per entry, from a counter-based stream keyed
/// by (seed, E, n); sigma = sqrt(P(1-P)/shots), floored at 1/(2 shots).
inline ShotSample sample_shots(const PopulationCurve& curve, int shots, std::uint64_t seed) {
  if (shots < 1) throw UsageError("sample_shots: shots must be >= 1");
  ShotSample out;
  const std::uint64_t e_bits = std::bit_cast<std::uint64_t>(curve.spec.E);
  for (std::size_t i = 0; i < curve.P.size(); ++i) {
    const double p = curve.P[i];
    CounterRng rng(seed, e_bits, static_cast<std::uint64_t>(curve.n_list[i]));
    int hits = 0;
    for (int k = 0; k < shots; ++k) hits += rng.uniform() < p ? 1 : 0;
    const double ph = static_cast<double>(hits) / shots;
    out.P_hat.push_back(ph);
    out.sigma.push_back(std::max(std::sqrt(ph * (1.0 - ph) / shots), 0.5 / shots));
  }
  return out;
}

inline SParameter s_parameter(const std::vector<double>& P_hat, const std::vector<double>& sigma) {
  if (P_hat.size() != sigma.size()) {
    throw UsageError("s_parameter: P_hat and sigma lengths differ");
  }
  SParameter out;
  for (std::size_t i = 0; i < P_hat.size(); ++i) {
    out.S += P_hat[i] - 0.5;
    out.deltaS += sigma[i];
  }
  return out;
}

/// Shot count used for a grid point when none is forced.
inline int default_shots(double E) { return E <= 100.0 ? 2000 : 5000; }

struct ScanOptions {
  DrivingSpec base;  // E is overwritten per grid point
  int shots = 0;     // 0 = noise-free, < 0 = default_shots(E)
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<int> n_list = default_n_list();
};

inline ScanRecord scan_point(double E, const ScanOptions& opt) {
  ScanRecord r;
  r.E = E;
  r.omega = opt.base.omega;
  r.seed = opt.seed;
  r.shots = opt.shots < 0 ? default_shots(E) : opt.shots;
  try {
    DrivingSpec spec = opt.base;
    spec.E = E;
    const auto curve = populations(sine_coefficients(spec), opt.n_list);
    if (r.shots == 0) {
      r.P_hat = curve.P;
      r.S = s_parameter(curve.P, std::vector<double>(curve.P.size(), 0.0)).S;
    } else {
      const auto shots = sample_shots(curve, r.shots, opt.seed);
      const auto sp = s_parameter(shots.P_hat, shots.sigma);
      r.P_hat = shots.P_hat;
      r.S = sp.S;
      r.deltaS = sp.deltaS;
    }
  } catch (const std::exception& e) {
    r.S = std::nan("");
    r.deltaS = std::nan("");
    r.P_hat.assign(opt.n_list.size(), std::nan(""));
    r.error = e.what();
  }
  return r;
}

/// One record per grid energy, in grid order, computed on opt.jobs workers.
inline std::vector<ScanRecord> scan(const std::vector<double>& E_grid, const ScanOptions& opt) {
  for (std::size_t i = 1; i < E_grid.size(); ++i) {
    if (!(E_grid[i] > E_grid[i - 1])) throw UsageError("scan: E grid must be strictly increasing");
  }
  opt.base.validate();
  return parallel_map<ScanRecord>(E_grid.size(), opt.jobs,
                                  [&](std::size_t i) { return scan_point(E_grid[i], opt); });
}

/// e_min, e_min + step, ... up to e_max (inclusive within rounding).
inline std::vector<double> make_grid(double e_min, double e_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("grid step must be > 0");
  if (!(e_max >= e_min)) throw UsageError("grid requires e_min <= e_max");
  const auto n = static_cast<std::size_t>(std::floor((e_max - e_min) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = e_min + static_cast<double>(i) * step;
  return g;
}

}  // namespace zetadrive
