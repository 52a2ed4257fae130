#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "nfpp/arms.hpp"
#include "nfpp/clusters.hpp"
#include "nfpp/config.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/fpp.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/parallel.hpp"
#include "nfpp/stats.hpp"

namespace nfpp {

inline constexpr std::uint64_t kCrossingStream = 0xc1;
inline constexpr std::uint64_t kPi4Stream = 0xc4;

// ---------------------------------------------------------------------------
// Box crossings

/// Window used to decide the crossing of [0,R]^2.
inline Window crossing_window(double R) { return Window::covering(AxisBox::from_bounds(0, R, 0, R), 1.5); }

/// Whether there is a blue left-right crossing of [0,R]^2 (end bonds meeting
/// the vertical sides, interior sites in the box).
inline bool has_blue_crossing(const Configuration& c, double R) {
  const Window& w = c.window();
  const AxisBox box = AxisBox::from_bounds(0, R, 0, R);
  w.require_covers(box, 1.0, "has_blue_crossing");
  const Point a0{0, 0}, a1{0, R}, b0{R, 0}, b1{R, R};
  std::vector<std::uint8_t> seen(w.size(), 0);
  std::vector<std::size_t> stack;
  // sites that can be v1: inside and blue with a blue v0 across the left side
  const int r0 = std::max(w.row_min(), 0), r1 = std::min(w.row_max(), static_cast<int>(std::floor(R / kRowHeight)));
  for (int y = r0; y <= r1; ++y) {
    const double Y = y * kRowHeight;
    if (Y > R) break;
    const int xlo = static_cast<int>(std::ceil(-0.5 * y - 1e-9));
    for (int x = xlo; x <= xlo + 1; ++x) {
      const SiteCoord v{x, y};
      const Point e = embed(v);
      if (!(e.x >= 0 && e.x <= R) || !c.blue(v)) continue;
      for (const SiteCoord u : neighbors(v))
        if (c.blue(u) && segments_intersect(embed(u), e, a0, a1)) {
          const std::size_t i = w.index(v);
          if (!seen[i]) {
            seen[i] = 1;
            stack.push_back(i);
          }
          break;
        }
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const Point e = embed(w.site(i));
    if (e.x > R - 1.0) {
      for (const SiteCoord u : neighbors(w.site(i)))
        if (c.blue(u) && segments_intersect(e, embed(u), b0, b1)) return true;
    }
    w.for_each_neighbor(i, [&](std::size_t j) {
      if (seen[j] || !c.blue(j)) return;
      const Point f = embed(w.site(j));
      if (f.x < 0 || f.x > R || f.y < 0 || f.y > R) return;
      seen[j] = 1;
      stack.push_back(j);
    });
  }
  return false;
}

inline MCEstimate crossing_probability(double p, double R, std::size_t samples, std::uint64_t seed,
                                       unsigned threads = 1) {
  if (!(R >= 1.0)) throw ArgumentError("crossing_probability: R must be at least 1");
  if (samples < 1) throw ArgumentError("crossing_probability: samples must be at least 1");
  const Window w = crossing_window(R);
  const std::vector<double> hits = parallel_map<double>(samples, threads, [&](std::size_t t) {
    const Configuration c = Configuration::sample(w, p, derive_seed(seed, kCrossingStream, t));
    return has_blue_crossing(c, R) ? 1.0 : 0.0;
  });
  return estimate_from(hits);
}

// ---------------------------------------------------------------------------
// L_eps

struct CorrelationLength {
  double value = 1.0;
  /// Standard error of log(value), from the crossing-probability noise
  /// divided by the slope of the crossing probability in log R.
  double log_stderr = 0.0;
  double bracket_lo = 1.0, bracket_hi = 1.0;  // final bisection bracket
  int evaluations = 0;
};

struct CorrelationSearch {
  double max_R = 4096.0;
  double grid_ratio = 1.189207115002721;  // 2^{1/4}
  double rel_precision = 0.05;
};

/// Smallest R with crossing probability <= eps: geometric grid, then
/// bisection. All R share per-trial seeds (common random numbers).
inline CorrelationLength correlation_length_eps(double p, double eps, std::size_t samples, std::uint64_t seed,
                                                unsigned threads = 1, const CorrelationSearch& cfg = {}) {
  if (!(eps > 0 && eps < 0.5)) throw ArgumentError("correlation_length_eps: need 0 < eps < 1/2");
  if (!(p < kCriticalP)) throw ArgumentError("correlation_length_eps: need p < 1/2");
  CorrelationLength out;
  auto prob = [&](double R) {
    ++out.evaluations;
    return crossing_probability(p, R, samples, seed, threads);
  };
  MCEstimate at = prob(1.0);
  if (at.mean <= eps) return out;
  double lo = 1.0, hi = 1.0;
  MCEstimate plo = at, phi = at;
  for (;;) {
    hi = lo * cfg.grid_ratio;
    if (hi > cfg.max_R) throw BudgetError("correlation_length_eps: crossing probability still above eps at R = " +
                                          std::to_string(cfg.max_R));
    phi = prob(hi);
    if (phi.mean <= eps) break;
    lo = hi;
    plo = phi;
  }
  // noise-to-slope ratio on the grid bracket
  const double slope = (plo.mean - phi.mean) / std::log(hi / lo);
  const double se = 0.5 * (plo.std_err + phi.std_err);
  while (hi / lo > 1.0 + cfg.rel_precision) {
    const double mid = std::sqrt(lo * hi);
    if (prob(mid).mean <= eps)
      hi = mid;
    else
      lo = mid;
  }
  out.value = hi;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  // crossing noise over the slope, plus rounding uniform over the final bracket
  const double noise = slope > 0 ? se / slope : std::log(cfg.grid_ratio);
  out.log_stderr = std::sqrt(noise * noise + std::pow(std::log(1.0 + cfg.rel_precision), 2) / 12.0);
  return out;
}

// ---------------------------------------------------------------------------
// pi_4 table and L(p)

struct Pi4Row {
  double R = 1;
  MCEstimate estimate;
  std::uint64_t seed = 0;
};

struct Pi4Table {
  std::vector<Pi4Row> rows;  // strictly increasing R

  void validate() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].estimate.mean < 0 || rows[i].estimate.mean > 1) throw ArgumentError("Pi4Table: estimate outside [0,1]");
      if (i > 0 && !(rows[i].R > rows[i - 1].R)) throw ArgumentError("Pi4Table: radii must increase strictly");
    }
  }

  /// Radii where R^2 pi_4 decreases; the infimum defining L(p) assumes growth.
  std::vector<double> monotonicity_violations() const {
    std::vector<double> bad;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double a = rows[i - 1].R * rows[i - 1].R * rows[i - 1].estimate.mean;
      const double b = rows[i].R * rows[i].R * rows[i].estimate.mean;
      if (b < a) bad.push_back(rows[i].R);
    }
    return bad;
  }

  // CSV columns: R,mean,stderr,n,seed
  void write_csv(std::ostream& os) const {
    os << "R,mean,stderr,n,seed\n";
    os << std::setprecision(17);
    for (const Pi4Row& r : rows)
      os << r.R << ',' << r.estimate.mean << ',' << r.estimate.std_err << ',' << r.estimate.n << ',' << r.seed << '\n';
  }
  static Pi4Table read_csv(std::istream& is) {
    Pi4Table t;
    std::string line;
    if (!std::getline(is, line) || line.rfind("R,mean,stderr,n,seed", 0) != 0)
      throw ArgumentError("Pi4Table: expected header R,mean,stderr,n,seed");
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string f[5];
      for (auto& s : f)
        if (!std::getline(ss, s, ',')) throw ArgumentError("Pi4Table: short row");
      Pi4Row r;
      r.R = std::stod(f[0]);
      r.estimate.mean = std::stod(f[1]);
      r.estimate.std_err = std::stod(f[2]);
      r.estimate.n = std::stoull(f[3]);
      r.seed = std::stoull(f[4]);
      t.rows.push_back(r);
    }
    t.validate();
    return t;
  }
};

/// pi_4(1,R) at p = 1/2 for each radius, centred on the origin site.
inline Pi4Table build_pi4_table(const std::vector<double>& radii, std::size_t samples, std::uint64_t seed,
                                unsigned threads = 1) {
  Pi4Table t;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    ArmEventSpec s;
    s.center = {0, 0};
    s.r = 1.0;
    s.R = radii[i];
    s.kind = ArmKind::kAlternating;
    s.k = 4;
    const std::uint64_t sd = derive_seed(seed, kPi4Stream, i);
    t.rows.push_back({radii[i], estimate_arm_probability(s, kCriticalP, samples, sd, threads), sd});
  }
  t.validate();
  return t;
}

/// inf{R : R^2 pi_4(1,R) >= 1/(1/2 - p)} with log-log interpolation between
/// table radii.
inline double correlation_length_L(double p, const Pi4Table& table) {
  if (!(p < kCriticalP)) throw ArgumentError("correlation_length_L: need p < 1/2");
  table.validate();
  const double target = 1.0 / (kCriticalP - p);
  double prevR = 0, prevF = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double R = table.rows[i].R;
    const double f = R * R * table.rows[i].estimate.mean;
    if (f >= target) {
      if (i == 0 || prevF <= 0) return R;
      const double t = (std::log(target) - std::log(prevF)) / (std::log(f) - std::log(prevF));
      return std::exp(std::log(prevR) + t * (std::log(R) - std::log(prevR)));
    }
    prevR = R;
    prevF = f;
  }
  throw RangeError("correlation_length_L: 1/(1/2 - p) exceeds the table range");
}

// ---------------------------------------------------------------------------
// Box graph

/// Boxes of side eps (in units of the ambient half-width a) tiling the
/// ambient square; box (i,j) has centre eps*(i + 1/2 - 3^n, j + 1/2 - 3^n).
struct BoxGraph {
  int n = 0;                 // eps = 3^{-n}
  int side = 0;              // 2 * 3^n boxes per side
  AxisBox ambient;           // square, r1 == r2 == a
  std::vector<std::vector<std::int32_t>> box_clusters;  // sorted cluster ids touching each box
  std::vector<std::vector<std::int32_t>> cluster_boxes;  // sorted box ids touched by each cluster
  ClusterLabeling labeling;  // blue clusters of sites with centre in the ambient box

  double eps() const { return std::pow(3.0, -n); }
  std::size_t size() const { return static_cast<std::size_t>(side) * side; }
  int id(int i, int j) const { return j * side + i; }
  int col(int b) const { return b % side; }
  int row(int b) const { return b / side; }
  /// Box in plane coordinates.
  AxisBox box(int b) const {
    const double s = ambient.r1 * eps();
    return AxisBox{{ambient.center.x - ambient.r1 + s * (col(b) + 0.5), ambient.center.y - ambient.r1 + s * (row(b) + 0.5)},
                   0.5 * s, 0.5 * s};
  }
  bool on_boundary(int b) const {
    return col(b) == 0 || row(b) == 0 || col(b) == side - 1 || row(b) == side - 1;
  }
  bool king_adjacent(int a, int b) const {
    return a != b && std::abs(col(a) - col(b)) <= 1 && std::abs(row(a) - row(b)) <= 1;
  }
  bool blue_connected(int a, int b) const {
    const auto& x = box_clusters[a];
    const auto& y = box_clusters[b];
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) return true;
      x[i] < y[j] ? ++i : ++j;
    }
    return false;
  }
  bool adjacent(int a, int b) const { return a != b && (king_adjacent(a, b) || blue_connected(a, b)); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> es;
    const int N = static_cast<int>(size());
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b)
        if (adjacent(a, b)) es.emplace_back(a, b);
    return es;
  }
};

/// Boxes (grid of `g`) whose interior meets the open hexagon of v.
inline std::vector<int> boxes_meeting_hexagon(const BoxGraph& g, SiteCoord v) {
  std::vector<int> out;
  const double s = g.ambient.r1 * g.eps();
  const Point c = embed(v);
  const double x0 = g.ambient.center.x - g.ambient.r1, y0 = g.ambient.center.y - g.ambient.r1;
  const int i0 = std::max(0, static_cast<int>(std::floor((c.x - 0.6 - x0) / s)));
  const int i1 = std::min(g.side - 1, static_cast<int>(std::floor((c.x + 0.6 - x0) / s)));
  const int j0 = std::max(0, static_cast<int>(std::floor((c.y - 0.6 - y0) / s)));
  const int j1 = std::min(g.side - 1, static_cast<int>(std::floor((c.y + 0.6 - y0) / s)));
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i)
      if (hexagon_interior_meets_box(v, g.box(g.id(i, j)))) out.push_back(g.id(i, j));
  return out;
}

/// Box graph of mesh 3^{-n} over a square ambient box. Blue connectivity uses
/// the clusters of blue sites whose centres lie in the ambient box; a
/// cluster touches a box when one of its hexagons meets the box's interior.
inline BoxGraph box_graph(const Configuration& c, int n, const AxisBox& ambient) {
  if (n < 0 || n > 6) throw ArgumentError("box_graph: mesh exponent must be in [0, 6]");
  if (ambient.r1 != ambient.r2 || !(ambient.r1 > 0)) throw ArgumentError("box_graph: ambient must be a square");
  c.window().require_covers(ambient, 1.0, "box_graph");
  BoxGraph g;
  g.n = n;
  g.side = 2 * static_cast<int>(std::lround(std::pow(3.0, n)));
  g.ambient = ambient;
  const Window& w = c.window();
  SiteMask in_amb(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) in_amb[i] = contains(ambient, embed(w.site(i))) ? 1 : 0;
  g.labeling = label_clusters(c, Color::kBlue, &in_amb);
  g.box_clusters.assign(g.size(), {});
  g.cluster_boxes.assign(g.labeling.clusters.size(), {});
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::int32_t id = g.labeling.label[i];
    if (id == ClusterLabeling::kNone) continue;
    for (const int b : boxes_meeting_hexagon(g, w.site(i))) g.cluster_boxes[id].push_back(b);
  }
  for (std::size_t id = 0; id < g.cluster_boxes.size(); ++id) {
    auto& v = g.cluster_boxes[id];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (const int b : v) g.box_clusters[b].push_back(static_cast<std::int32_t>(id));
  }
  return g;
}

/// Euclidean diameter of a union of boxes, in ambient units (Lambda_1 has side 2).
inline double union_diameter(const BoxGraph& g, const std::vector<int>& boxes) {
  std::vector<Point> pts;
  for (const int b : boxes) {
    const AxisBox x = g.box(b);
    pts.push_back({x.xmin(), x.ymin()});
    pts.push_back({x.xmax(), x.ymin()});
    pts.push_back({x.xmin(), x.ymax()});
    pts.push_back({x.xmax(), x.ymax()});
  }
  // convex hull (monotone chain), then all hull pairs
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  double d = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) d = std::max(d, norm2(h[i] - h[j]));
  return d / g.ambient.r1;
}

namespace detail {

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i >> 6] |= 1ULL << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1ULL; }
  bool any() const {
    for (const auto x : w)
      if (x) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (const auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
    return r;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w.size(); ++k)
      for (std::uint64_t x = w[k]; x; x &= x - 1) f(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
  }
};

}  // namespace detail

/// All good subgraphs: complete, maximal, meeting the ambient boundary, with
/// union of diameter at least delta (ambient units). Bron-Kerbosch with
/// pivoting; branches whose candidates cannot reach diameter delta or the
/// boundary are cut.
inline std::vector<std::vector<int>> good_subgraphs(const BoxGraph& g, double delta) {
  if (!(10.0 * g.eps() < delta)) throw ArgumentError("good_subgraphs: need 10 eps < delta");
  const std::size_t N = g.size();
  std::vector<detail::Bits> nb_cache(N);
  std::vector<std::uint8_t> have(N, 0);
  auto nb = [&](int v) -> const detail::Bits& {
    if (!have[v]) {
      detail::Bits b(N);
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int i = g.col(v) + di, j = g.row(v) + dj;
          if ((di || dj) && i >= 0 && j >= 0 && i < g.side && j < g.side) b.set(g.id(i, j));
        }
      for (const std::int32_t cl : g.box_clusters[v])
        for (const int u : g.cluster_boxes[cl]) b.set(u);
      b.reset(v);
      nb_cache[v] = std::move(b);
      have[v] = 1;
    }
    return nb_cache[v];
  };
  auto weight = [&](int v) {
    std::size_t s = 8;
    for (const std::int32_t cl : g.box_clusters[v]) s += g.cluster_boxes[cl].size();
    return s;
  };
  const double s = g.eps() * 2.0;  // box side in ambient units (ambient side 2)
  auto hopeless = [&](const std::vector<int>& R, const detail::Bits& P) {
    int i0 = g.side, i1 = -1, j0 = g.side, j1 = -1;
    bool boundary = false;
    auto take = [&](int b) {
      i0 = std::min(i0, g.col(b));
      i1 = std::max(i1, g.col(b));
      j0 = std::min(j0, g.row(b));
      j1 = std::max(j1, g.row(b));
      boundary = boundary || g.on_boundary(b);
    };
    for (const int b : R) take(b);
    P.for_each([&](std::size_t b) { take(static_cast<int>(b)); });
    const double dx = (i1 - i0 + 1) * s, dy = (j1 - j0 + 1) * s;
    return !boundary || std::hypot(dx, dy) < delta;
  };

  std::vector<std::vector<int>> out;
  std::vector<int> R;
  auto bk = [&](auto&& self, detail::Bits P, detail::Bits X) -> void {
    if (!P.any() && !X.any()) {
      bool boundary = false;
      for (const int b : R) boundary = boundary || g.on_boundary(b);
      if (boundary && union_diameter(g, R) >= delta) {
        std::vector<int> h = R;
        std::sort(h.begin(), h.end());
        out.push_back(h);
      }
      return;
    }
    if (!P.any() || hopeless(R, P)) return;
    int pivot = -1;
    std::size_t best = 0;
    auto consider = [&](std::size_t u) {
      const std::size_t wgt = weight(static_cast<int>(u));
      if (pivot < 0 || wgt > best) {
        pivot = static_cast<int>(u);
        best = wgt;
      }
    };
    P.for_each(consider);
    X.for_each(consider);
    const detail::Bits& np = nb(pivot);
    std::vector<int> todo;
    P.for_each([&](std::size_t v) {
      if (!np.test(v)) todo.push_back(static_cast<int>(v));
    });
    for (const int v : todo) {
      const detail::Bits& nv = nb(v);
      R.push_back(v);
      self(self, P & nv, X & nv);
      R.pop_back();
      P.reset(v);
      X.set(v);
    }
  };
  detail::Bits P(N), X(N);
  for (std::size_t v = 0; v < N; ++v) P.set(v);
  bk(bk, P, X);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Box covers and Hausdorff distances

/// Boxes of the mesh meeting the interior of some hexagon of the cluster.
inline std::vector<int> box_cover(const BoxGraph& g, const std::vector<SiteCoord>& cluster) {
  std::vector<int> out;
  for (const SiteCoord v : cluster)
    for (const int b : boxes_meeting_hexagon(g, v)) out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// L-infinity Hausdorff distance between finite point sets.
inline double hausdorff_linf(const std::vector<Point>& A, const std::vector<Point>& B) {
  if (A.empty() || B.empty()) throw ArgumentError("hausdorff_linf: empty point set");
  auto directed = [](const std::vector<Point>& X, const std::vector<Point>& Y) {
    double d = 0;
    for (const Point x : X) {
      double best = 1e300;
      for (const Point y : Y) {
        best = std::min(best, norm_inf(x - y));
        if (best <= d) break;
      }
      d = std::max(d, best);
    }
    return d;
  };
  return std::max(directed(A, B), directed(B, A));
}

/// Corners, edge midpoints and centres of the boxes.
inline std::vector<Point> box_sample_points(const BoxGraph& g, const std::vector<int>& boxes) {
  std::vector<Point> pts;
  for (const int b : boxes) {
    const AxisBox x = g.box(b);
    for (const double fx : {-1.0, 0.0, 1.0})
      for (const double fy : {-1.0, 0.0, 1.0}) pts.push_back({x.center.x + fx * x.r1, x.center.y + fy * x.r2});
  }
  return pts;
}

namespace detail {

// Sutherland-Hodgman clip of a convex polygon against an axis box.
inline std::vector<Point> clip_to_box(std::vector<Point> poly, const AxisBox& b) {
  auto clip = [&](auto inside, auto intersect) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point cur = poly[i], prev = poly[(i + poly.size() - 1) % poly.size()];
      const bool ci = inside(cur), pi = inside(prev);
      if (ci) {
        if (!pi) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (pi) {
        out.push_back(intersect(prev, cur));
      }
    }
    poly = out;
  };
  auto at_x = [](double X) {
    return [X](Point a, Point c) {
      const double t = (X - a.x) / (c.x - a.x);
      return Point{X, a.y + t * (c.y - a.y)};
    };
  };
  auto at_y = [](double Y) {
    return [Y](Point a, Point c) {
      const double t = (Y - a.y) / (c.y - a.y);
      return Point{a.x + t * (c.x - a.x), Y};
    };
  };
  clip([&](Point q) { return q.x >= b.xmin(); }, at_x(b.xmin()));
  if (!poly.empty()) clip([&](Point q) { return q.x <= b.xmax(); }, at_x(b.xmax()));
  if (!poly.empty()) clip([&](Point q) { return q.y >= b.ymin(); }, at_y(b.ymin()));
  if (!poly.empty()) clip([&](Point q) { return q.y <= b.ymax(); }, at_y(b.ymax()));
  return poly;
}

inline Point centroid(const std::vector<Point>& poly) {
  Point cen{0, 0};
  for (const Point q : poly) cen = cen + q;
  return (1.0 / static_cast<double>(poly.size())) * cen;
}

}  // namespace detail

/// Discretized d_H between the hexagons of a cluster, cut to the ambient box,
/// and its box cover, in plane units. Each hexagon is clipped against every
/// box it meets and contributes the clipped corners and centroid; boxes
/// contribute corners, edge midpoints and centres.
inline double cover_hausdorff(const BoxGraph& g, const std::vector<SiteCoord>& cluster) {
  std::vector<Point> pts;
  for (const SiteCoord v : cluster) {
    const auto cs = hexagon_corners(v);
    for (const int b : boxes_meeting_hexagon(g, v)) {
      const std::vector<Point> poly = detail::clip_to_box({cs.begin(), cs.end()}, g.box(b));
      if (poly.size() < 3) continue;
      pts.insert(pts.end(), poly.begin(), poly.end());
      pts.push_back(detail::centroid(poly));
    }
  }
  return hausdorff_linf(pts, box_sample_points(g, box_cover(g, cluster)));
}

/// Rigorous upper bound on the continuum L-infinity Hausdorff distance between
/// the part of the cluster inside the ambient box and its box cover. Each box
/// gets a witness point inside both the box and a hexagon interior (the
/// centroid of the clipped hexagon); every point of the box is within the
/// largest corner-to-witness distance of the cluster. The reverse direction
/// vanishes because the boxes tile the ambient square.
inline double cover_hausdorff_bound(const BoxGraph& g, const std::vector<SiteCoord>& cluster) {
  double bound = 0;
  for (const int b : box_cover(g, cluster)) {
    const AxisBox x = g.box(b);
    double best = 1e300;
    for (const SiteCoord v : cluster) {
      const auto cs = hexagon_corners(v);
      const std::vector<Point> poly = detail::clip_to_box({cs.begin(), cs.end()}, x);
      if (poly.size() < 3) continue;
      const Point cen = detail::centroid(poly);
      double far = 0;
      for (const double fx : {-1.0, 1.0})
        for (const double fy : {-1.0, 1.0})
          far = std::max(far, norm_inf(Point{x.center.x + fx * x.r1, x.center.y + fy * x.r2} - cen));
      best = std::min(best, far);
    }
    bound = std::max(bound, best);
  }
  return bound;
}

// ---------------------------------------------------------------------------
// Components versus good subgraphs

struct GoodSubgraphReport {
  std::size_t components = 0;  // boundary-touching components of diameter >= delta
  std::size_t good = 0;        // good subgraphs
  std::size_t matched = 0;     // components whose cover is a good subgraph
};

/// Compares boundary-touching blue components (sites with centres in the
/// ambient box) of diameter >= delta with the good subgraphs.
inline GoodSubgraphReport compare_good_subgraphs(const Configuration& c, const BoxGraph& g, double delta) {
  const auto goods = good_subgraphs(g, delta);
  GoodSubgraphReport rep;
  rep.good = goods.size();
  const double a = g.ambient.r1;
  for (std::size_t id = 0; id < g.labeling.clusters.size(); ++id) {
    const std::vector<SiteCoord> sites = g.labeling.sites_of(static_cast<std::int32_t>(id));
    bool touches = false;
    std::vector<Point> pts;
    for (const SiteCoord v : sites) {
      for (const Point q : hexagon_corners(v)) {
        pts.push_back(q);
        touches = touches || !(q.x > g.ambient.xmin() && q.x < g.ambient.xmax() && q.y > g.ambient.ymin() &&
                               q.y < g.ambient.ymax());
      }
    }
    if (!touches) continue;
    double diam = 0;
    {
      // hull diameter of hexagon corners
      std::sort(pts.begin(), pts.end(), [](Point p, Point q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
      const double dx = pts.back().x - pts.front().x;
      double y0 = 1e300, y1 = -1e300;
      for (const Point q : pts) {
        y0 = std::min(y0, q.y);
        y1 = std::max(y1, q.y);
      }
      if (std::max(dx, y1 - y0) / a * std::sqrt(2.0) < delta) continue;  // cannot reach delta
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, norm2(pts[i] - pts[j]));
    }
    if (diam / a < delta) continue;
    ++rep.components;
    const std::vector<int> cover = box_cover(g, sites);
    if (std::binary_search(goods.begin(), goods.end(), cover)) ++rep.matched;
  }
  (void)c;
  return rep;
}

}  // namespace nfpp
