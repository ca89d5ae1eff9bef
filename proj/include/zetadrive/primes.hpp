#pragma once

// Primes from zeros: the truncated explicit-formula sum h(x), the prime
// counting function, Riemann's staircase J(x) and peak detection on h.

#include <zetadrive/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace zetadrive {

/// Largest argument accepted by prime_pi.
inline constexpr double kPrimeSieveBound = 1e8;

/// h(x) = -2 sqrt(x) sum_n cos(E_n ln x): each zero paired with its conjugate.
inline double h_function(double x, std::span<const double> zeros) {
  if (!(x > 1.0)) throw DomainError("h_function: x must be > 1");
  if (zeros.empty()) throw UsageError("h_function: zero list is empty");
  const double l = std::log(x);
  double s = 0.0;
  for (double E : zeros) s += std::cos(E * l);
  return -2.0 * std::sqrt(x) * s;
}

namespace detail {

/// Primes up to a limit that grows on demand; shared and thread-safe.
class PrimeTable {
 public:
  /// Number of primes <= n.
  std::int64_t count_upto(std::int64_t n) {
    std::lock_guard lock(mu_);
    if (n > limit_) grow(n);
    return std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n)) -
           primes_.begin();
  }

  static PrimeTable& instance() {
    static PrimeTable t;
    return t;
  }

 private:
  void grow(std::int64_t n) {
    const auto bound = static_cast<std::int64_t>(kPrimeSieveBound);
    std::int64_t target = std::max<std::int64_t>(n, std::min<std::int64_t>(2 * limit_, bound));
    target = std::max<std::int64_t>(target, 1024);
    std::vector<bool> composite(static_cast<std::size_t>(target) + 1, false);
    primes_.clear();
    for (std::int64_t i = 2; i <= target; ++i) {
      if (composite[i]) continue;
      primes_.push_back(static_cast<std::uint32_t>(i));
      for (std::int64_t j = i * i; j <= target; j += i) composite[j] = true;
    }
    limit_ = target;
  }

  std::mutex mu_;
  std::int64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

/// floor(N^{1/n}) exactly, for N >= 1.
inline std::int64_t integer_root(std::int64_t N, int n) {
  if (n == 1) return N;
  auto r = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(N), 1.0 / n)));
  auto pow_le = [&](std::int64_t b) {
    // b^n <= N without overflow
    std::int64_t acc = 1;
    for (int i = 0; i < n; ++i) {
      if (acc > N / b) return false;
      acc *= b;
    }
    return acc <= N;
  };
  while (r > 1 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return std::max<std::int64_t>(r, 1);
}

}  // namespace detail

/// Number of primes <= x (sieve up to 1e8, cached across calls).
inline std::int64_t prime_pi(double x) {
  if (!(x >= 0.0)) throw DomainError("prime_pi: x must be >= 0");
  if (x > kPrimeSieveBound) throw DomainError("prime_pi: x exceeds the sieve bound 1e8");
  const auto n = static_cast<std::int64_t>(std::floor(x));
  if (n < 2) return 0;
  return detail::PrimeTable::instance().count_upto(n);
}

/// J(x) = sum_{n >= 1} pi(x^{1/n}) / n.
inline double riemann_J(double x) {
  if (!(x >= 1.0)) throw DomainError("riemann_J: x must be >= 1");
  if (x > kPrimeSieveBound) throw DomainError("riemann_J: x exceeds the sieve bound 1e8");
  const auto N = static_cast<std::int64_t>(std::floor(x));
  double J = 0.0;
  for (int n = 1; (std::int64_t{1} << n) <= N; ++n) {
    J += static_cast<double>(prime_pi(static_cast<double>(detail::integer_root(N, n)))) / n;
  }
  return J;
}

/// True for p^k with p prime and k >= 1.
inline bool is_prime_power(std::int64_t m) {
  if (m < 2) return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      return m == 1;
    }
  }
  return true;
}

inline std::vector<double> prime_power_targets(double x_max) {
  std::vector<double> out;
  for (std::int64_t m = 2; m <= static_cast<std::int64_t>(std::floor(x_max)); ++m) {
    if (is_prime_power(m)) out.push_back(static_cast<double>(m));
  }
  return out;
}

struct PrimePeak {
  double x_peak;
  double height;
  double nearest_target;
  double offset;
  double prominence;
};

/// Topographic prominence of the local maximum at index i: height above the
/// higher of the two lowest points separating it from higher ground.
inline double peak_prominence(std::span<const double> h, std::size_t i) {
  double left_min = h[i];
  for (std::size_t j = i; j-- > 0;) {
    if (h[j] > h[i]) break;
    left_min = std::min(left_min, h[j]);
  }
  double right_min = h[i];
  for (std::size_t j = i + 1; j < h.size(); ++j) {
    if (h[j] > h[i]) break;
    right_min = std::min(right_min, h[j]);
  }
  return h[i] - std::max(left_min, right_min);
}

/// Interior local maxima (flat tops reduced to their middle sample) with
/// prominence >= min_prominence, each matched to the nearest prime power
/// <= max(x). Without any prime power in range, nearest_target is NaN.
inline std::vector<PrimePeak> detect_peaks(std::span<const double> x, std::span<const double> h,
                                           double min_prominence) {
  if (x.size() != h.size()) throw UsageError("detect_peaks: x and h lengths differ");
  if (x.size() < 3) throw UsageError("detect_peaks: need at least 3 samples");
  const auto targets = prime_power_targets(*std::max_element(x.begin(), x.end()));
  std::vector<PrimePeak> out;
  std::size_t i = 1;
  while (i + 1 < h.size()) {
    if (!(h[i] > h[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < h.size() && h[j + 1] == h[i]) ++j;
    if (j + 1 < h.size() && h[j + 1] < h[i]) {
      const std::size_t mid = (i + j) / 2;
      const double prom = peak_prominence(h, mid);
      if (prom >= min_prominence) {
        PrimePeak p{x[mid], h[mid], std::nan(""), std::nan(""), prom};
        for (double t : targets) {
          if (std::isnan(p.nearest_target) || std::abs(t - x[mid]) < std::abs(p.nearest_target - x[mid])) {
            p.nearest_target = t;
          }
        }
        p.offset = p.x_peak - p.nearest_target;
        out.push_back(p);
      }
    }
    i = j + 1;
  }
  return out;
}

/// Default prominence threshold for a sampled h: a fraction of max |h|.
inline constexpr double kDefaultProminenceFraction = 0.35;

inline double default_min_prominence(std::span<const double> h,
                                     double fraction = kDefaultProminenceFraction) {
  double m = 0.0;
  for (double v : h) m = std::max(m, std::abs(v));
  return fraction * m;
}

}  // namespace zetadrive
