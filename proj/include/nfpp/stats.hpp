#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "nfpp/errors.hpp"

namespace nfpp {

/// Mean with standard error (sample standard deviation / sqrt(n)).
struct MCEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n = 0;
};

inline MCEstimate estimate_from(std::span<const double> xs) {
  if (xs.empty()) throw ArgumentError("estimate_from: no samples");
  // Welford
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (const double x : xs) {
    ++k;
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  const double n = static_cast<double>(xs.size());
  const double sd = xs.size() > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n), xs.size()};
}

inline MCEstimate estimate_from(const std::vector<double>& xs) { return estimate_from(std::span<const double>(xs)); }

/// Proportion estimate from a success count.
inline MCEstimate proportion(std::size_t hits, std::size_t n) {
  if (n == 0) throw ArgumentError("proportion: no samples");
  std::vector<double> xs(n, 0.0);
  std::fill(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(hits), 1.0);
  return estimate_from(xs);
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Empirical quantile with linear interpolation between order statistics.
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw ArgumentError("quantile: empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, xs.size() - 1);
  return xs[i] + (pos - static_cast<double>(i)) * (xs[j] - xs[i]);
}

inline Interval percentile_interval(const std::vector<double>& xs, double level) {
  const double a = 0.5 * (1.0 - level);
  return {quantile(xs, a), quantile(xs, 1.0 - a)};
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Weighted least squares y = slope x + intercept (unit weights by default).
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y, std::span<const double> w = {}) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("linear_fit: need at least two paired points");
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    sw += wi;
    sx += wi * x[i];
    sy += wi * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    sxx += wi * (x[i] - mx) * (x[i] - mx);
    sxy += wi * (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ArgumentError("linear_fit: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  return linear_fit(std::span<const double>(x), std::span<const double>(y));
}

}  // namespace nfpp
