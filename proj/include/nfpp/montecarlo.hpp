#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "nfpp/clusters.hpp"
#include "nfpp/config.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/fpp.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/parallel.hpp"
#include "nfpp/scaling.hpp"
#include "nfpp/stats.hpp"

namespace nfpp {

inline constexpr std::uint64_t kMuStream = 0x30;
inline constexpr std::uint64_t kShapeStream = 0x31;
inline constexpr std::uint64_t kBootStream = 0x32;
inline constexpr std::uint64_t kBondStream = 0x33;
inline constexpr std::uint64_t kStripStream = 0x34;

// ---------------------------------------------------------------------------
// Time constant

struct MuRung {
  int n = 0;
  SiteCoord target;
  double length = 0;   // |target|
  MCEstimate time;     // a(0, target)
  MCEstimate ratio;    // a / |target|
};

struct MuEstimate {
  std::vector<MuRung> rungs;
  MCEstimate at_largest;  // ratio at the largest rung
  /// Slope of a against |target| through the two largest rungs (paired per
  /// trial). Equals at_largest with a single rung.
  MCEstimate two_point;
  double intercept = 0;
  /// E[a(2n)]/2n <= E[a(n)]/n up to two standard errors, for every doubling
  /// pair in the ladder.
  bool expectation_subadditive = true;
  /// Largest rung below 8 L_eps(p) when a correlation length was supplied.
  bool ladder_warning = false;
};

/// Window for a(0, target): the bounding box of 0 and target widened by |target|/2.
inline Window mu_window(SiteCoord target) {
  const Point b = embed(target);
  const double m = default_margin(norm2(b));
  return Window::covering(AxisBox::from_bounds(std::min(0.0, b.x), std::max(0.0, b.x), std::min(0.0, b.y),
                                               std::max(0.0, b.y)),
                          m + 1.0);
}

/// a(0, n e^{i theta}) / |target| for each rung. Trial t uses the same seed
/// at every rung, so the rungs are coupled.
inline MuEstimate estimate_mu(double p, double theta, const std::vector<int>& ladder, std::size_t samples,
                              std::uint64_t seed, unsigned threads = 1, std::optional<double> L_eps = std::nullopt) {
  if (ladder.empty()) throw ArgumentError("estimate_mu: empty ladder");
  for (std::size_t i = 0; i < ladder.size(); ++i)
    if (ladder[i] < 1 || (i > 0 && ladder[i] <= ladder[i - 1]))
      throw ArgumentError("estimate_mu: ladder must be positive and strictly increasing");
  if (samples < 1) throw ArgumentError("estimate_mu: samples must be at least 1");
  MuEstimate out;
  std::vector<Window> windows;
  for (const int n : ladder) {
    MuRung r;
    r.n = n;
    r.target = closest_site(polar(n, theta));
    r.length = norm2(embed(r.target));
    if (r.target == SiteCoord{0, 0}) throw ArgumentError("estimate_mu: rung rounds to the origin");
    out.rungs.push_back(r);
    windows.push_back(mu_window(r.target));
  }
  const std::size_t K = ladder.size();
  const std::vector<std::vector<double>> times = parallel_map<std::vector<double>>(samples, threads, [&](std::size_t t) {
    const std::uint64_t sd = derive_seed(seed, kMuStream, t);
    std::vector<double> a(K);
    for (std::size_t k = 0; k < K; ++k) {
      const Configuration c = Configuration::sample(windows[k], p, sd);
      a[k] = point_to_point(c, {0, 0}, embed(out.rungs[k].target), default_margin(out.rungs[k].length));
    }
    return a;
  });
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<double> a(samples), r(samples);
    for (std::size_t t = 0; t < samples; ++t) {
      a[t] = times[t][k];
      r[t] = a[t] / out.rungs[k].length;
    }
    out.rungs[k].time = estimate_from(a);
    out.rungs[k].ratio = estimate_from(r);
  }
  out.at_largest = out.rungs.back().ratio;
  if (K == 1) {
    out.two_point = out.at_largest;
  } else {
    const MuRung& r1 = out.rungs[K - 2];
    const MuRung& r2 = out.rungs[K - 1];
    std::vector<double> s(samples);
    for (std::size_t t = 0; t < samples; ++t) s[t] = (times[t][K - 1] - times[t][K - 2]) / (r2.length - r1.length);
    out.two_point = estimate_from(s);
    out.intercept = r2.time.mean - out.two_point.mean * r2.length;
  }
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j)
      if (ladder[j] == 2 * ladder[i]) {
        const double tol = 2.0 * std::hypot(out.rungs[i].ratio.std_err, out.rungs[j].ratio.std_err);
        if (out.rungs[j].ratio.mean > out.rungs[i].ratio.mean + tol + 1e-12) out.expectation_subadditive = false;
      }
  if (L_eps) out.ladder_warning = ladder.back() < 8.0 * *L_eps;
  return out;
}

// ---------------------------------------------------------------------------
// Shape anisotropy

struct ShapeEstimate {
  std::vector<double> thetas;
  std::vector<MCEstimate> mu;  // per direction, averaged over its 12 images
  double anisotropy = 0;       // max / min of the direction means
  Interval ci;                 // bootstrap percentile interval
  double level = 0.9;
};

/// The 12 images of n e^{i theta} under the lattice's rotations and reflections.
inline std::array<Point, 12> symmetry_images(double n, double theta) {
  std::array<Point, 12> out;
  for (int j = 0; j < 6; ++j) {
    out[2 * j] = polar(n, theta + j * std::numbers::pi / 3.0);
    out[2 * j + 1] = polar(n, -theta + j * std::numbers::pi / 3.0);
  }
  return out;
}

inline std::vector<double> shape_directions(int K) {
  std::vector<double> th(K);
  for (int k = 0; k < K; ++k) th[k] = std::numbers::pi * k / (3.0 * K);
  return th;
}

/// Anisotropy of the estimated limit shape at radius n. Every configuration
/// gets one search from the origin over [-1.5n, 1.5n]^2, which keeps a margin
/// of n/2 around every target.
inline ShapeEstimate shape_anisotropy(double p, int K, int n, std::size_t samples, std::uint64_t seed,
                                      unsigned threads = 1, std::size_t bootstrap = 1000, double level = 0.9) {
  if (!(p < kCriticalP)) throw ArgumentError("shape_anisotropy: need p < 1/2 (mu vanishes otherwise)");
  if (K < 6) throw ArgumentError("shape_anisotropy: need K >= 6 directions");
  if (n < 2) throw ArgumentError("shape_anisotropy: need n >= 2");
  if (samples < 2) throw ArgumentError("shape_anisotropy: need at least 2 samples");
  ShapeEstimate out;
  out.thetas = shape_directions(K);
  out.level = level;
  const Window w = Window::covering(AxisBox{{0, 0}, 1.5 * n, 1.5 * n}, 1.0);
  std::vector<std::array<std::size_t, 12>> idx(K);
  std::vector<std::array<double, 12>> len(K);
  for (int k = 0; k < K; ++k) {
    const auto im = symmetry_images(n, out.thetas[k]);
    for (int j = 0; j < 12; ++j) {
      const SiteCoord v = closest_site(im[j]);
      idx[k][j] = w.index(v);
      len[k][j] = norm2(embed(v));
    }
  }
  const std::size_t origin = w.index(closest_site({0, 0}));
  const auto per_config = parallel_map<std::vector<double>>(samples, threads, [&](std::size_t t) {
    const Configuration c = Configuration::sample(w, p, derive_seed(seed, kShapeStream, t));
    const SearchSource src{origin, c.weight(origin)};
    SearchOptions opt;
    opt.track_pred = false;
    const SearchResult R = zero_one_search(c, std::span<const SearchSource>(&src, 1), opt);
    std::vector<double> v(K);
    for (int k = 0; k < K; ++k) {
      double s = 0;
      for (int j = 0; j < 12; ++j) s += R.dist[idx[k][j]] / len[k][j];
      v[k] = s / 12.0;
    }
    return v;
  });
  auto ratio_of = [&](const std::vector<double>& means) {
    const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
    if (!(*lo > 0)) throw ArgumentError("shape_anisotropy: zero time constant estimate");
    return *hi / *lo;
  };
  std::vector<double> means(K);
  for (int k = 0; k < K; ++k) {
    std::vector<double> col(samples);
    for (std::size_t t = 0; t < samples; ++t) col[t] = per_config[t][k];
    out.mu.push_back(estimate_from(col));
    means[k] = out.mu.back().mean;
  }
  out.anisotropy = ratio_of(means);
  std::mt19937_64 rng(derive_seed(seed, kBootStream, 0));
  std::uniform_int_distribution<std::size_t> pick(0, samples - 1);
  std::vector<double> boots;
  boots.reserve(bootstrap);
  for (std::size_t b = 0; b < bootstrap; ++b) {
    std::vector<double> m(K, 0.0);
    for (std::size_t t = 0; t < samples; ++t) {
      const auto& row = per_config[pick(rng)];
      for (int k = 0; k < K; ++k) m[k] += row[k];
    }
    boots.push_back(ratio_of(m));  // the common 1/samples cancels
  }
  out.ci = bootstrap ? percentile_interval(boots, level) : Interval{out.anisotropy, out.anisotropy};
  return out;
}

// ---------------------------------------------------------------------------
// Chayes-Chayes-Durrett ratio L_eps * mu

struct CcdRatio {
  CorrelationLength L;
  int n = 0;
  MCEstimate mu;
  double ratio = 0;
  double stderr_ratio = 0;  // delta method
};

inline CcdRatio ccd_ratio(double p, double eps, std::size_t samples, std::uint64_t seed, unsigned threads = 1,
                          const CorrelationSearch& cfg = {}) {
  if (!(p < kCriticalP)) throw ArgumentError("ccd_ratio: need p < 1/2");
  CcdRatio out;
  out.L = correlation_length_eps(p, eps, samples, seed, threads, cfg);
  out.n = static_cast<int>(std::ceil(8.0 * out.L.value));
  out.mu = estimate_mu(p, 0.0, {out.n}, samples, seed, threads).at_largest;
  out.ratio = out.L.value * out.mu.mean;
  const double rel_mu = out.mu.mean > 0 ? out.mu.std_err / out.mu.mean : 0.0;
  out.stderr_ratio = out.ratio * std::hypot(out.L.log_stderr, rel_mu);
  return out;
}

// ---------------------------------------------------------------------------
// Correlation-length exponent

struct ExponentFit {
  std::vector<double> ps;
  std::vector<CorrelationLength> L;
  LinearFit fit;  // log L against log 1/(1/2 - p)
  Interval ci;
  double bootstrap_sd = 0;  // spread of the refitted slopes
  double level = 0.9;
};

/// Least-squares slope of log L_eps(p) against log 1/(1/2 - p). The interval
/// is a parametric bootstrap: each log L is redrawn from a normal law with its
/// own standard error and the line refitted.
inline ExponentFit fit_correlation_exponent(const std::vector<double>& ps, double eps, std::size_t samples,
                                            std::uint64_t seed, unsigned threads = 1, std::size_t bootstrap = 2000,
                                            double level = 0.9, const CorrelationSearch& cfg = {}) {
  std::vector<double> sorted = ps;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ArgumentError("fit_correlation_exponent: p values must be distinct");
  if (ps.size() < 4) throw ArgumentError("fit_correlation_exponent: need at least 4 values of p");
  ExponentFit out;
  out.ps = ps;
  out.level = level;
  std::vector<double> x, y;
  for (const double p : ps) {
    if (!(p > 0 && p < kCriticalP)) throw ArgumentError("fit_correlation_exponent: need 0 < p < 1/2");
    out.L.push_back(correlation_length_eps(p, eps, samples, seed, threads, cfg));
    x.push_back(std::log(1.0 / (kCriticalP - p)));
    y.push_back(std::log(out.L.back().value));
  }
  out.fit = linear_fit(x, y);
  std::mt19937_64 rng(derive_seed(seed, kBootStream, 1));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> slopes;
  for (std::size_t b = 0; b < bootstrap; ++b) {
    std::vector<double> yb(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) yb[i] = y[i] + out.L[i].log_stderr * gauss(rng);
    slopes.push_back(linear_fit(x, yb).slope);
  }
  out.ci = bootstrap ? percentile_interval(slopes, level) : Interval{out.fit.slope, out.fit.slope};
  if (bootstrap > 1) {
    const MCEstimate e = estimate_from(slopes);
    out.bootstrap_sd = e.std_err * std::sqrt(static_cast<double>(bootstrap));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Renormalized good bonds

/// Whether the bond from a to b is good: some path from C^p(a) to C^p(b)
/// inside Box(a, b; r) (points within sup-distance r of the segment) has
/// time at most `threshold`.
inline bool bond_is_good(const Configuration& c, Point a, Point b, double r, double disk_radius, double threshold) {
  const AxisBox box =
      AxisBox::from_bounds(std::min(a.x, b.x) - r, std::max(a.x, b.x) + r, std::min(a.y, b.y) - r, std::max(a.y, b.y) + r);
  const Window& w = c.window();
  const EndpointCluster ca = outermost_surrounding_cluster(c, a, disk_radius);
  const EndpointCluster cb = outermost_surrounding_cluster(c, b, disk_radius);
  const SiteMask inside = region_mask(w, box);
  SiteMask A = sites_mask(w, ca.sites), B = sites_mask(w, cb.sites);
  bool any_a = false, any_b = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    A[i] &= inside[i];
    B[i] &= inside[i];
    any_a = any_a || A[i];
    any_b = any_b || B[i];
  }
  if (!any_a || !any_b) return false;
  const PassageResult R = passage_time(c, A, B, &inside, false);
  return R.reached && R.time <= threshold;
}

/// Fraction of good bonds among the horizontal bond 0 -> N and the vertical
/// bond 0 -> iN of the lattice rescaled by L (each trial contributes both).
inline MCEstimate good_bond_fraction(double p, double N, double eps, double nu, double L, std::size_t samples,
                                     std::uint64_t seed, unsigned threads = 1) {
  if (!(N > 0 && L >= 1.0)) throw ArgumentError("good_bond_fraction: need N > 0 and L >= 1");
  if (!(eps > 0)) throw ArgumentError("good_bond_fraction: need eps > 0");
  if (samples < 1) throw ArgumentError("good_bond_fraction: samples must be at least 1");
  const double len = N * L, r = len / 4.0, rad = L / 2.0;
  const double threshold = (nu + eps) * N;
  const Window w = Window::covering(AxisBox::from_bounds(-r, len + r, -r, len + r), rad + 2.0);
  const std::vector<double> frac = parallel_map<double>(samples, threads, [&](std::size_t t) {
    const Configuration c = Configuration::sample(w, p, derive_seed(seed, kBondStream, t));
    const int h = bond_is_good(c, {0, 0}, {len, 0}, r, rad, threshold);
    const int v = bond_is_good(c, {0, 0}, {0, len}, r, rad, threshold);
    return 0.5 * (h + v);
  });
  return estimate_from(frac);
}

// ---------------------------------------------------------------------------
// Strip time constant

/// T_{0,n}(h) / n along the real axis, in lattice units, with endpoint
/// clusters taken in disks of radius disk_radius. Unreached trials count as
/// failures and are excluded from the mean; their number is returned.
struct StripConstant {
  MCEstimate ratio;
  std::size_t unreached = 0;
};

inline StripConstant strip_time_constant(double p, int n, double h, double disk_radius, std::size_t samples,
                                         std::uint64_t seed, unsigned threads = 1) {
  if (n < 1 || !(h >= 1.0)) throw ArgumentError("strip_time_constant: need n >= 1 and h >= 1");
  const Window w = Window::covering(AxisBox::from_bounds(0, n, -h, h), disk_radius + 2.0);
  const std::vector<double> v = parallel_map<double>(samples, threads, [&](std::size_t t) {
    const Configuration c = Configuration::sample(w, p, derive_seed(seed, kStripStream, t));
    const ClusterPassage cp = strip_passage(c, 0.0, n, 0.0, h, 1.0, disk_radius);
    return cp.result.reached ? cp.result.time / static_cast<double>(n) : -1.0;
  });
  StripConstant out;
  std::vector<double> ok;
  for (const double x : v) {
    if (x < 0)
      ++out.unreached;
    else
      ok.push_back(x);
  }
  if (!ok.empty()) out.ratio = estimate_from(ok);
  return out;
}

}  // namespace nfpp
