#pragma once

// Passage times. Every functional is a shortest path with site weights
// t(v) in {0,1}, counting both endpoints, run with bucketed 0-1 relaxation.

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfpp/clusters.hpp"
#include "nfpp/config.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/window.hpp"

namespace nfpp {

inline constexpr int kUnreached = INT_MAX;

struct SearchSource {
  std::size_t index;
  int cost;  // already includes the source's own weight
};

struct SearchOptions {
  const SiteMask* allowed = nullptr;  // null: whole window
  const SiteMask* targets = nullptr;  // stop after the first level that finalizes a target
  bool track_pred = true;
};

struct SearchResult {
  std::vector<int> dist;
  std::vector<std::size_t> pred;  // kNoSite at sources
  std::size_t hit = kNoSite;      // smallest-index target at the minimal level
  int hit_dist = kUnreached;
};

/// Dial-bucketed shortest paths. A site's predecessor is the smallest-index
/// finalized neighbour achieving its distance, which makes geodesics
/// deterministic.
inline SearchResult zero_one_search(const Configuration& c, std::span<const SearchSource> sources,
                                    const SearchOptions& opt = {}) {
  const Window& w = c.window();
  const std::size_t n = w.size();
  SearchResult R;
  R.dist.assign(n, kUnreached);
  if (opt.track_pred) R.pred.assign(n, kNoSite);
  std::vector<std::uint8_t> done(n, 0);
  std::vector<std::vector<std::size_t>> buckets;
  auto push = [&](std::size_t i, int d) {
    if (static_cast<std::size_t>(d) >= buckets.size()) buckets.resize(d + 1);
    buckets[d].push_back(i);
  };
  for (const SearchSource& s : sources) {
    if (opt.allowed && !(*opt.allowed)[s.index]) continue;
    if (s.cost < R.dist[s.index]) {
      R.dist[s.index] = s.cost;
      push(s.index, s.cost);
    }
  }
  for (std::size_t level = 0; level < buckets.size(); ++level) {
    const int L = static_cast<int>(level);
    for (std::size_t k = 0; k < buckets[level].size(); ++k) {
      const std::size_t u = buckets[level][k];
      if (done[u] || R.dist[u] != L) continue;
      done[u] = 1;
      if (opt.targets && (*opt.targets)[u] && u < R.hit) {
        R.hit = u;
        R.hit_dist = L;
      }
      w.for_each_neighbor(u, [&](std::size_t v) {
        if (done[v] || (opt.allowed && !(*opt.allowed)[v])) return;
        const int nd = L + c.weight(v);
        if (nd < R.dist[v]) {
          R.dist[v] = nd;
          if (opt.track_pred) R.pred[v] = u;
          push(v, nd);
        } else if (nd == R.dist[v] && opt.track_pred && R.pred[v] != kNoSite && u < R.pred[v]) {
          R.pred[v] = u;
        }
      });
    }
    if (R.hit != kNoSite) break;
  }
  return R;
}

inline std::vector<SiteCoord> trace_back(const Window& w, const SearchResult& R, std::size_t end) {
  std::vector<SiteCoord> path;
  for (std::size_t i = end; i != kNoSite; i = R.pred[i]) path.push_back(w.site(i));
  std::reverse(path.begin(), path.end());
  return path;
}

struct PassageResult {
  int time = 0;
  bool reached = false;
  std::vector<SiteCoord> geodesic;  // empty unless requested and reached
};

/// T(A,B) over paths inside the window, and inside `allowed` if given.
inline PassageResult passage_time(const Configuration& c, const SiteMask& A, const SiteMask& B,
                                  const SiteMask* allowed = nullptr, bool want_geodesic = true) {
  std::vector<SearchSource> src;
  bool any_b = false;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i] && (!allowed || (*allowed)[i])) src.push_back({i, c.weight(i)});
    any_b = any_b || (B[i] && (!allowed || (*allowed)[i]));
  }
  if (src.empty() || !any_b) throw ArgumentError("passage_time: A and B must have sites inside the constraint");
  SearchOptions opt;
  opt.allowed = allowed;
  opt.targets = &B;
  opt.track_pred = want_geodesic;
  const SearchResult R = zero_one_search(c, src, opt);
  PassageResult out;
  if (R.hit == kNoSite) return out;
  out.reached = true;
  out.time = R.hit_dist;
  if (want_geodesic) out.geodesic = trace_back(c.window(), R, R.hit);
  return out;
}

inline PassageResult passage_time(const Configuration& c, const std::vector<SiteCoord>& A,
                                  const std::vector<SiteCoord>& B, const std::optional<Region>& constraint = std::nullopt,
                                  bool want_geodesic = true) {
  if (A.empty() || B.empty()) throw ArgumentError("passage_time: A and B must be nonempty");
  const Window& w = c.window();
  const SiteMask a = sites_mask(w, A, "passage_time A");
  const SiteMask b = sites_mask(w, B, "passage_time B");
  if (!constraint) return passage_time(c, a, b, nullptr, want_geodesic);
  const SiteMask m = region_mask(w, *constraint);
  return passage_time(c, a, b, &m, want_geodesic);
}

/// Default margin around a point-to-point segment of length n.
inline double default_margin(double n) { return 0.5 * n; }

/// T(closest_site(a), closest_site(b)) inside the window, which must cover the
/// bounding box of a and b enlarged by `margin`.
inline int point_to_point(const Configuration& c, Point a, Point b, double margin) {
  const AxisBox box = AxisBox::from_bounds(std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y));
  if (!c.window().covers(box, margin)) throw ArgumentError("point_to_point: window too small for the required margin");
  const Window& w = c.window();
  SiteMask A(w.size(), 0), B(w.size(), 0);
  A[w.index(closest_site(a))] = 1;
  B[w.index(closest_site(b))] = 1;
  return passage_time(c, A, B, nullptr, false).time;
}

/// a_{m,n} = T(m, n) along the real axis with margin (n-m)/2.
inline int axial_passage(const Configuration& c, int m, int n) {
  if (n <= m) throw ArgumentError("axial_passage: need m < n");
  return point_to_point(c, {double(m), 0.0}, {double(n), 0.0}, default_margin(n - m));
}

inline int a0n(const Configuration& c, int n) {
  if (n < 1) throw ArgumentError("a0n: n must be at least 1");
  return axial_passage(c, 0, n);
}

/// b_{0,n}: from the origin's site to any site with plane abscissa >= n.
/// The window must cover [-n/2, n] x [-n/2, n/2].
inline int point_to_line(const Configuration& c, int n) {
  if (n < 1) throw ArgumentError("point_to_line: n must be at least 1");
  const Window& w = c.window();
  const double m = default_margin(n);
  if (!w.covers(AxisBox::from_bounds(-m, n, -m, m))) throw ArgumentError("point_to_line: window too small");
  SiteMask A(w.size(), 0), B(w.size(), 0);
  A[w.index(closest_site({0, 0}))] = 1;
  for (std::size_t i = 0; i < w.size(); ++i) B[i] = embed(w.site(i)).x >= n ? 1 : 0;
  return passage_time(c, A, B, nullptr, false).time;
}

// ---------------------------------------------------------------------------
// Crossings. A crossing is (v0, ..., vk) with v1..v_{k-1} in the region and
// the segments v0v1, v_{k-1}vk meeting the entry and exit sides. Entry sites
// start at cost t(v0) + t(v1); exits add t(vk).

template <class Entry, class Exit>
PassageResult crossing_search(const Configuration& c, const SiteMask& inside, Entry&& entry, Exit&& exit,
                              bool want_geodesic) {
  const Window& w = c.window();
  std::vector<SearchSource> src;
  std::vector<std::size_t> entry_site(w.size(), kNoSite);
  PassageResult out;
  int best = kUnreached;
  std::size_t best_last = kNoSite, best_end = kNoSite, best_k1_first = kNoSite;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!inside[i]) continue;
    const Point pi = embed(w.site(i));
    for (int k = 0; k < 6; ++k) {
      const std::size_t j = w.neighbor(i, k);
      if (j == kNoSite) throw WindowError("crossing: window does not contain the region's neighbours");
      const Point pj = embed(w.site(j));
      if (entry(pj, pi)) {
        const int cost = c.weight(j) + c.weight(i);
        src.push_back({i, cost});
        if (entry_site[i] == kNoSite || c.weight(j) < c.weight(entry_site[i]) ||
            (c.weight(j) == c.weight(entry_site[i]) && j < entry_site[i]))
          entry_site[i] = j;
        // k = 1: a single bond meeting both sides
        if (exit(pj, pi) && cost < best) {
          best = cost;
          best_k1_first = j;
          best_end = i;
        }
      }
    }
  }
  SearchOptions opt;
  opt.allowed = &inside;
  opt.track_pred = want_geodesic;
  const SearchResult R = zero_one_search(c, src, opt);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!inside[i] || R.dist[i] == kUnreached) continue;
    const Point pi = embed(w.site(i));
    for (int k = 0; k < 6; ++k) {
      const std::size_t j = w.neighbor(i, k);
      if (exit(pi, embed(w.site(j)))) {
        const int cost = R.dist[i] + c.weight(j);
        if (cost < best) {
          best = cost;
          best_last = i;
          best_end = j;
          best_k1_first = kNoSite;
        }
      }
    }
  }
  if (best == kUnreached) return out;
  out.reached = true;
  out.time = best;
  if (want_geodesic) {
    if (best_k1_first != kNoSite) {
      out.geodesic = {w.site(best_k1_first), w.site(best_end)};
    } else {
      std::vector<SiteCoord> mid = trace_back(w, R, best_last);
      out.geodesic.push_back(w.site(entry_site[w.index(mid.front())]));
      out.geodesic.insert(out.geodesic.end(), mid.begin(), mid.end());
      out.geodesic.push_back(w.site(best_end));
    }
  }
  return out;
}

inline AxisBox bounding_box(const RotatedBox& b) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const Point q : {Point{0, 0}, Point{b.width, 0}, Point{0, b.height}, Point{b.width, b.height}}) {
    const Point p = b.origin + rotate(q, b.theta);
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return AxisBox::from_bounds(x0, x1, y0, y1);
}

/// Minimal passage time of a left-right crossing of z + e^{i theta}([0,w] x [0,h]).
inline PassageResult line_to_line_result(const Configuration& c, double w, double h, double theta, Point z,
                                         bool want_geodesic = false) {
  if (!(w >= 1.0 && h >= 1.0)) throw ArgumentError("line_to_line: box sides must be at least 1");
  const RotatedBox box{z, theta, w, h};
  c.window().require_covers(bounding_box(box), 1.0, "line_to_line");
  const Point a0 = z, a1 = z + rotate({0, h}, theta);
  const Point b0 = z + rotate({w, 0}, theta), b1 = z + rotate({w, h}, theta);
  const SiteMask inside = region_mask(c.window(), box);
  return crossing_search(
      c, inside, [&](Point p, Point q) { return segments_intersect(p, q, a0, a1); },
      [&](Point p, Point q) { return segments_intersect(p, q, b0, b1); }, want_geodesic);
}

inline int line_to_line(const Configuration& c, double w, double h, double theta, Point z) {
  const PassageResult r = line_to_line_result(c, w, h, theta, z);
  if (!r.reached) throw WindowError("line_to_line: no crossing inside the window");
  return r.time;
}

/// Crossing of the sector z + e^{i theta}{|arg| <= pi/4, r1 <= |w| <= r2}
/// between its two curved sides.
inline PassageResult sector_crossing(const Configuration& c, Point z, double theta, double r1, double r2,
                                     bool want_geodesic = false) {
  if (!(r1 > 0 && r1 < r2)) throw ArgumentError("sector_crossing: need 0 < r1 < r2");
  c.window().require_covers(AxisBox{z, r2, r2}, 1.0, "sector_crossing");
  const Sector s{z, theta, r1, r2};
  const SiteMask inside = region_mask(c.window(), s);
  constexpr double q = std::numbers::pi / 4.0;
  return crossing_search(
      c, inside, [&](Point p, Point pp) { return segment_meets_arc(p, pp, z, r1, theta, q); },
      [&](Point p, Point pp) { return segment_meets_arc(p, pp, z, r2, theta, q); }, want_geodesic);
}

// ---------------------------------------------------------------------------
// Cluster-to-cluster times

struct ClusterPassage {
  PassageResult result;
  EndpointCluster from;
  EndpointCluster to;
};

/// T^{p,theta}_{m,n}: between the endpoint clusters of m e^{i theta} and
/// n e^{i theta} (lengths in units of `scale`), unconstrained in the window.
inline ClusterPassage cluster_passage(const Configuration& c, double m, double n, double theta, double scale,
                                      std::optional<double> disk_radius = std::nullopt) {
  if (!(m < n)) throw ArgumentError("cluster_passage: need m < n");
  const double rad = disk_radius.value_or(0.5 * scale);
  ClusterPassage out;
  out.from = outermost_surrounding_cluster(c, polar(m * scale, theta), rad);
  out.to = outermost_surrounding_cluster(c, polar(n * scale, theta), rad);
  const Window& w = c.window();
  out.result = passage_time(c, sites_mask(w, out.from.sites), sites_mask(w, out.to.sites), nullptr, false);
  return out;
}

/// T^{p,theta}_{m,n}(h): as above but with every path site in the discrete
/// strip of half-height h (all in units of `scale`). The strip is truncated
/// to the window. Unreached if an endpoint cluster misses the strip.
inline ClusterPassage strip_passage(const Configuration& c, double m, double n, double theta, double h,
                                    double scale = 1.0, std::optional<double> disk_radius = std::nullopt) {
  if (!(m < n)) throw ArgumentError("strip_passage: need m < n");
  if (!(h >= 1.0)) throw ArgumentError("strip_passage: h must be at least 1");
  const double rad = disk_radius.value_or(0.5 * scale);
  ClusterPassage out;
  out.from = outermost_surrounding_cluster(c, polar(m * scale, theta), rad);
  out.to = outermost_surrounding_cluster(c, polar(n * scale, theta), rad);
  const Window& w = c.window();
  const SiteMask strip = discrete_strip_mask(w, Strip{theta, h * scale});
  SiteMask A = sites_mask(w, out.from.sites), B = sites_mask(w, out.to.sites);
  bool any_a = false, any_b = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    A[i] &= strip[i];
    B[i] &= strip[i];
    any_a = any_a || A[i];
    any_b = any_b || B[i];
  }
  if (!any_a || !any_b) return out;
  out.result = passage_time(c, A, B, &strip, false);
  return out;
}

}  // namespace nfpp
