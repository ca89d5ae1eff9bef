#pragma once

// Zero extraction from an S(E) scan: bracket sign changes, bootstrap the
// crossing with interpolating polynomials through perturbed S values, and
// label each crossing as a Riemann zero or a crossing of Re g alone.

#include <zetadrive/errors.hpp>
#include <zetadrive/measurement.hpp>
#include <zetadrive/parallel.hpp>
#include <zetadrive/rng.hpp>
#include <zetadrive/zeta.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace zetadrive {

struct WindowPoint {
  double E;
  double S;
  double dS;
};

/// Grid points around one sign change; the crossing lies between
/// points[bracket] and points[bracket + 1].
struct SignChangeWindow {
  std::vector<WindowPoint> points;
  std::size_t bracket = 0;

  double lo() const { return points[bracket].E; }
  double hi() const { return points[bracket + 1].E; }
};

enum class ZeroKind { riemann, re_only, unclassified };

inline const char* to_string(ZeroKind k) {
  switch (k) {
    case ZeroKind::riemann: return "riemann";
    case ZeroKind::re_only: return "re_only";
    default: return "unclassified";
  }
}

/// Law of the bootstrap perturbation of each S within its error bar.
enum class BootstrapLaw {
  uniform,             // uniform on [S - dS, S + dS]
  gaussian_truncated,  // normal(S, dS / 2) restricted to [S - dS, S + dS]
};

struct ZeroEstimate {
  double mean = 0.0;
  double std = 0.0;
  int n_boot = 0;
  int n_retained = 0;
  SignChangeWindow window;
  ZeroKind kind = ZeroKind::unclassified;

  /// The retention share below which an estimate is flagged as unreliable.
  static constexpr double kLowRetention = 0.5;
  bool low_retention() const { return n_retained < kLowRetention * n_boot; }
};

/// Windows around every i with S_i S_{i+1} < 0: the 4 nearest grid points
/// (i-1 .. i+2), clipped to 3 at the ends of the grid. Records that carry an
/// error never bracket a crossing and are left out of windows.
inline std::vector<SignChangeWindow> find_sign_changes(const std::vector<ScanRecord>& records) {
  if (records.size() < 2) throw UsageError("find_sign_changes: need at least 2 records");
  std::vector<SignChangeWindow> out;
  const std::size_t n = records.size();
  auto usable = [&](std::size_t j) { return records[j].ok() && std::isfinite(records[j].S); };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!usable(i) || !usable(i + 1)) continue;
    if (!(records[i].S * records[i + 1].S < 0.0)) continue;
    const std::size_t first = i > 0 ? i - 1 : i;
    const std::size_t last = std::min(n - 1, i + 2);
    SignChangeWindow w;
    for (std::size_t j = first; j <= last; ++j) {
      if (j != i && j != i + 1 && !usable(j)) continue;
      if (j == i) w.bracket = w.points.size();
      w.points.push_back({records[j].E, records[j].S, records[j].deltaS});
    }
    out.push_back(std::move(w));
  }
  return out;
}

namespace detail {

/// Coefficients (ascending) of the interpolating polynomial through (x, y).
inline std::vector<double> interpolate(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> coef(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // Lagrange basis l_i as a polynomial.
    std::vector<double> basis{1.0};
    double denom = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<double> next(basis.size() + 1, 0.0);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= x[j] * basis[k];
      }
      basis = std::move(next);
      denom *= x[i] - x[j];
    }
    for (std::size_t k = 0; k < n; ++k) coef[k] += y[i] * basis[k] / denom;
  }
  return coef;
}

inline double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

/// Real roots of p in [a, b], found by bisection on monotone segments
/// separated by the stationary points of p (degree <= 3).
inline std::vector<double> roots_in(const std::vector<double>& c, double a, double b) {
  std::vector<double> cuts{a};
  // Stationary points: roots of p' (degree <= 2).
  const double d1 = c.size() > 1 ? c[1] : 0.0;
  const double d2 = c.size() > 2 ? 2.0 * c[2] : 0.0;
  const double d3 = c.size() > 3 ? 3.0 * c[3] : 0.0;
  if (d3 != 0.0) {
    const double disc = d2 * d2 - 4.0 * d3 * d1;
    if (disc > 0.0) {
      const double q = -0.5 * (d2 + std::copysign(std::sqrt(disc), d2));
      for (double r : {q / d3, q != 0.0 ? d1 / q : std::nan("")}) {
        if (r > a && r < b) cuts.push_back(r);
      }
    }
  } else if (d2 != 0.0) {
    const double r = -d1 / d2;
    if (r > a && r < b) cuts.push_back(r);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    double flo = poly_eval(c, lo), fhi = poly_eval(c, hi);
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (i + 2 == cuts.size() && fhi == 0.0) {
      roots.push_back(hi);
      continue;
    }
    if (flo * fhi > 0.0) continue;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = poly_eval(c, mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

/// Standard normal deviate by Box-Muller from two uniforms.
inline double normal_deviate(CounterRng& rng) {
  double u1 = rng.uniform();
  while (u1 <= 0.0) u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

/// Root of the interpolating polynomial through `S` inside the bracket,
/// nearest the bracket midpoint when there are several.
inline std::optional<double> interpolated_root(const SignChangeWindow& w,
                                               const std::vector<double>& S) {
  const double mid = 0.5 * (w.lo() + w.hi());
  const double half = 0.5 * (w.hi() - w.lo());
  std::vector<double> x(w.points.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (w.points[i].E - mid) / half;
  const auto coef = detail::interpolate(x, S);
  const auto roots = detail::roots_in(coef, -1.0, 1.0);
  if (roots.empty()) return std::nullopt;
  double best = roots.front();
  for (double r : roots) {
    if (std::abs(r) < std::abs(best)) best = r;
  }
  return mid + half * best;
}

/// Bootstrap the crossing in `w`: n_boot perturbed interpolations, rootless
/// draws discarded. Draw d of window `window_index` uses the stream keyed by
/// (seed, window_index, d), so the result is independent of scheduling.
inline ZeroEstimate bootstrap_zero(const SignChangeWindow& w, int n_boot = 4000,
                                   std::uint64_t seed = 0, std::uint64_t window_index = 0,
                                   BootstrapLaw law = BootstrapLaw::uniform) {
  if (w.points.size() < 2 || w.bracket + 1 >= w.points.size()) {
    throw UsageError("bootstrap_zero: window must contain a bracketing pair");
  }
  if (n_boot < 1) throw UsageError("bootstrap_zero: n_boot must be >= 1");

  ZeroEstimate est;
  est.window = w;
  est.n_boot = n_boot;

  std::vector<double> S(w.points.size());
  const bool noiseless =
      std::all_of(w.points.begin(), w.points.end(), [](const WindowPoint& p) { return p.dS == 0.0; });
  if (noiseless) {
    for (std::size_t i = 0; i < S.size(); ++i) S[i] = w.points[i].S;
    const auto r = interpolated_root(w, S);
    if (!r) throw EstimationError("bootstrap_zero: no root inside the bracket", n_boot, 0);
    est.mean = *r;
    est.std = 0.0;
    est.n_retained = n_boot;
    return est;
  }

  // Welford accumulation in draw order.
  double mean = 0.0, m2 = 0.0;
  int kept = 0;
  for (int d = 0; d < n_boot; ++d) {
    CounterRng rng(seed, window_index, static_cast<std::uint64_t>(d));
    for (std::size_t i = 0; i < S.size(); ++i) {
      const auto& p = w.points[i];
      double z;
      if (law == BootstrapLaw::uniform) {
        z = 2.0 * rng.uniform() - 1.0;
      } else {
        do {
          z = 0.5 * detail::normal_deviate(rng);
        } while (std::abs(z) > 1.0);
      }
      S[i] = p.S + z * p.dS;
    }
    const auto r = interpolated_root(w, S);
    if (!r) continue;
    ++kept;
    const double delta = *r - mean;
    mean += delta / kept;
    m2 += delta * (*r - mean);
  }
  if (kept == 0) {
    throw EstimationError("bootstrap_zero: every draw was rootless", n_boot, 0);
  }
  est.mean = mean;
  est.std = kept > 1 ? std::sqrt(m2 / (kept - 1)) : 0.0;
  est.n_retained = kept;
  return est;
}

/// Minimum of |zeta(1/2 + iE)| over [E - 0.5, E + 0.5] in steps of 0.01.
inline double min_zeta_near(double E) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = -50; i <= 50; ++i) {
    best = std::min(best, std::abs(zeta_critical(E + 0.01 * i)));
  }
  return best;
}

inline ZeroEstimate classify(ZeroEstimate est, double threshold = 0.1) {
  if (std::isinf(threshold) && threshold > 0.0) {
    est.kind = ZeroKind::riemann;
    return est;
  }
  est.kind = min_zeta_near(est.mean) < threshold ? ZeroKind::riemann : ZeroKind::re_only;
  return est;
}

/// Nearest catalogue zero within `radius` of E, if any.
inline std::optional<double> nearest_known_zero(double E, double radius = 0.5) {
  std::optional<double> best;
  for (double z : known_zeros()) {
    if (std::abs(z - E) <= radius && (!best || std::abs(z - E) < std::abs(*best - E))) best = z;
  }
  return best;
}

struct ExtractOptions {
  int n_boot = 4000;
  std::uint64_t seed = 0;
  BootstrapLaw law = BootstrapLaw::uniform;
  double threshold = 0.1;
  int jobs = 1;
};

struct WindowFailure {
  std::size_t window_index;
  double lo;
  double hi;
  std::string message;
};

struct ExtractResult {
  std::vector<ZeroEstimate> estimates;  // in E order
  std::vector<WindowFailure> failures;
};

/// find_sign_changes + bootstrap_zero + classify over a whole scan.
inline ExtractResult extract_zeros(const std::vector<ScanRecord>& records,
                                   const ExtractOptions& opt = {}) {
  const auto windows = find_sign_changes(records);
  struct Slot {
    std::optional<ZeroEstimate> est;
    std::string error;
  };
  const auto slots = parallel_map<Slot>(windows.size(), opt.jobs, [&](std::size_t i) {
    Slot s;
    try {
      s.est = classify(bootstrap_zero(windows[i], opt.n_boot, opt.seed, i, opt.law), opt.threshold);
    } catch (const EstimationError& e) {
      s.error = e.what();
    }
    return s;
  });
  ExtractResult out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].est) {
      out.estimates.push_back(*slots[i].est);
    } else {
      out.failures.push_back({i, windows[i].lo(), windows[i].hi(), slots[i].error});
    }
  }
  return out;
}

}  // namespace zetadrive
