#pragma once

// Triangular-lattice geometry. Sites are addressed by axial coordinates
// (x, y) standing for the plane point x + y e^{i pi/3}; neighbouring sites
// are at Euclidean distance 1 and each site owns the regular hexagon of
// inradius 1/2 centred on it.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <variant>

namespace nfpp {

inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline constexpr double kRowHeight = kSqrt3 / 2.0;
/// Circumradius of a site hexagon (distance from centre to a corner).
inline constexpr double kHexCircumradius = 1.0 / kSqrt3;
inline constexpr double kGeomTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point, Point) = default;
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return std::hypot(a.x, a.y); }
inline double norm_inf(Point a) { return std::max(std::abs(a.x), std::abs(a.y)); }

/// e^{i theta} * a
inline Point rotate(Point a, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

inline Point polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

struct SiteCoord {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(SiteCoord, SiteCoord) = default;
  /// Lexicographic by (y, x); this is the tie-breaking order everywhere.
  friend constexpr std::strong_ordering operator<=>(SiteCoord a, SiteCoord b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  friend constexpr SiteCoord operator+(SiteCoord a, SiteCoord b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr SiteCoord operator-(SiteCoord a, SiteCoord b) { return {a.x - b.x, a.y - b.y}; }
};

/// Neighbour offsets in counterclockwise order starting from angle 0.
inline constexpr std::array<SiteCoord, 6> kNeighborOffsets{
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

inline constexpr int wrap6(int k) { return ((k % 6) + 6) % 6; }

inline constexpr std::array<SiteCoord, 6> neighbors(SiteCoord v) {
  std::array<SiteCoord, 6> out{};
  for (int k = 0; k < 6; ++k) out[k] = v + kNeighborOffsets[k];
  return out;
}

/// Graph distance on the triangular lattice.
inline constexpr int graph_distance(SiteCoord a, SiteCoord b) {
  const int dx = b.x - a.x, dy = b.y - a.y;
  const int ax = dx < 0 ? -dx : dx, ay = dy < 0 ? -dy : dy, as = dx + dy < 0 ? -(dx + dy) : dx + dy;
  return (ax + ay + as) / 2;
}

inline constexpr bool are_neighbors(SiteCoord a, SiteCoord b) { return graph_distance(a, b) == 1; }

inline constexpr Point embed(SiteCoord v) {
  return {v.x + 0.5 * v.y, kRowHeight * v.y};
}

inline constexpr double kHalfInvSqrt3 = 0.5 / kSqrt3;
/// Corner offsets of a hexagon, corner k at angle 30 + 60k degrees.
inline constexpr std::array<Point, 6> kHexCorners{{{0.5, kHalfInvSqrt3},
                                                   {0.0, 2 * kHalfInvSqrt3},
                                                   {-0.5, kHalfInvSqrt3},
                                                   {-0.5, -kHalfInvSqrt3},
                                                   {0.0, -2 * kHalfInvSqrt3},
                                                   {0.5, -kHalfInvSqrt3}}};

inline Point hexagon_corner(SiteCoord v, int k) { return embed(v) + kHexCorners[k]; }

inline std::array<Point, 6> hexagon_corners(SiteCoord v) {
  std::array<Point, 6> out{};
  const Point c = embed(v);
  for (int k = 0; k < 6; ++k) out[k] = c + kHexCorners[k];
  return out;
}

/// Closed hexagon membership (edges facing the six neighbours at distance 1/2).
inline bool hexagon_contains(SiteCoord v, Point z, double tol = 1e-12) {
  const Point d = z - embed(v);
  for (int k = 0; k < 6; ++k) {
    const Point u = embed(kNeighborOffsets[k]);
    if (dot(d, u) > 0.5 + tol) return false;
  }
  return true;
}

/// Nearest site to z; equidistant candidates resolve to the lexicographically
/// smaller site, so the tie-resolved hexagons partition the plane.
inline SiteCoord closest_site(Point z) {
  const double yf = z.y / kRowHeight;
  const double xf = z.x - 0.5 * yf;
  const int x0 = static_cast<int>(std::floor(xf));
  const int y0 = static_cast<int>(std::floor(yf));
  SiteCoord best{x0, y0};
  double best_d = 1e300;
  for (int dy = -1; dy <= 2; ++dy) {
    for (int dx = -1; dx <= 2; ++dx) {
      const SiteCoord v{x0 + dx, y0 + dy};
      const Point e = embed(v) - z;
      const double d = e.x * e.x + e.y * e.y;
      if (d < best_d - 1e-12 || (std::abs(d - best_d) <= 1e-12 && v < best)) {
        if (d < best_d - 1e-12) best_d = d;
        best = v;
      }
    }
  }
  return best;
}

/// Projection half-width of a site hexagon onto the unit direction n.
inline double hexagon_support(Point n) {
  double s = 0.0;
  for (const Point q : kHexCorners) s = std::max(s, dot(n, q));
  return s;
}

// ---------------------------------------------------------------------------
// Regions

enum class Norm { kLinf, kEuclidean };

/// [cx - r1, cx + r1] x [cy - r2, cy + r2]
struct AxisBox {
  Point center;
  double r1 = 0.0;
  double r2 = 0.0;

  double xmin() const { return center.x - r1; }
  double xmax() const { return center.x + r1; }
  double ymin() const { return center.y - r2; }
  double ymax() const { return center.y + r2; }
  static AxisBox from_bounds(double x0, double x1, double y0, double y1) {
    return {{0.5 * (x0 + x1), 0.5 * (y0 + y1)}, 0.5 * (x1 - x0), 0.5 * (y1 - y0)};
  }
};

/// origin + e^{i theta} ([0, width] x [0, height])
struct RotatedBox {
  Point origin;
  double theta = 0.0;
  double width = 0.0;
  double height = 0.0;
};

/// r <= |p - center| <= R in the chosen norm.
struct Annulus {
  Point center;
  double r = 0.0;
  double R = 0.0;
  Norm norm = Norm::kLinf;
};

/// |Im(e^{-i theta} p)| <= half_height
struct Strip {
  double theta = 0.0;
  double half_height = 0.0;
};

struct Disk {
  Point center;
  double radius = 0.0;
};

/// center + e^{i theta} {w : |arg w| <= pi/4, r1 <= |w| <= r2}
struct Sector {
  Point center;
  double theta = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

using Region = std::variant<AxisBox, RotatedBox, Annulus, Strip, Disk, Sector>;

inline bool contains(const AxisBox& b, Point p) {
  return p.x >= b.xmin() && p.x <= b.xmax() && p.y >= b.ymin() && p.y <= b.ymax();
}

inline Point to_local(const RotatedBox& b, Point p) { return rotate(p - b.origin, -b.theta); }

inline bool contains(const RotatedBox& b, Point p) {
  const Point q = to_local(b, p);
  return q.x >= -kGeomTol && q.x <= b.width + kGeomTol && q.y >= -kGeomTol && q.y <= b.height + kGeomTol;
}

inline bool contains(const Annulus& a, Point p) {
  const Point d = p - a.center;
  const double n = a.norm == Norm::kLinf ? norm_inf(d) : norm2(d);
  return n >= a.r && n <= a.R;
}

inline bool contains(const Strip& s, Point p) {
  return std::abs(rotate(p, -s.theta).y) <= s.half_height;
}

inline bool contains(const Disk& d, Point p) { return norm2(p - d.center) <= d.radius; }

inline bool contains(const Sector& s, Point p) {
  const Point w = rotate(p - s.center, -s.theta);
  const double r = norm2(w);
  if (r < s.r1 || r > s.r2) return false;
  return std::abs(std::atan2(w.y, w.x)) <= std::numbers::pi / 4.0 + 1e-12;
}

inline bool contains(const Region& r, Point p) {
  return std::visit([p](const auto& reg) { return contains(reg, p); }, r);
}

/// Whether the open hexagon of v meets the closed strip (the discrete-strip rule).
inline bool hexagon_meets_strip(SiteCoord v, const Strip& s) {
  const Point n{-std::sin(s.theta), std::cos(s.theta)};
  const double c = dot(n, embed(v));
  const double h = hexagon_support(n);
  return c - h < s.half_height - 1e-12 && c + h > -s.half_height + 1e-12;
}

/// Whether the open hexagon of v meets the closed axis box.
inline bool hexagon_interior_meets_box(SiteCoord v, const AxisBox& b) {
  // Separating-axis test between a convex hexagon and a rectangle, with the
  // hexagon taken open: touching along an edge or corner does not count.
  const Point c = embed(v);
  const auto corners = hexagon_corners(v);
  double hx0 = 1e300, hx1 = -1e300, hy0 = 1e300, hy1 = -1e300;
  for (const Point& q : corners) {
    hx0 = std::min(hx0, q.x);
    hx1 = std::max(hx1, q.x);
    hy0 = std::min(hy0, q.y);
    hy1 = std::max(hy1, q.y);
  }
  const double eps = 1e-12;
  if (hx1 <= b.xmin() + eps || hx0 >= b.xmax() - eps || hy1 <= b.ymin() + eps || hy0 >= b.ymax() - eps) return false;
  const std::array<Point, 4> rect{{{b.xmin(), b.ymin()}, {b.xmax(), b.ymin()}, {b.xmax(), b.ymax()}, {b.xmin(), b.ymax()}}};
  for (int k = 0; k < 3; ++k) {
    const Point n = embed(kNeighborOffsets[k]);  // hexagon edge normals
    const double hc = dot(n, c);
    double lo = 1e300, hi = -1e300;
    for (const Point& q : rect) {
      lo = std::min(lo, dot(n, q));
      hi = std::max(hi, dot(n, q));
    }
    if (hi <= hc - 0.5 + eps || lo >= hc + 0.5 - eps) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Segment tests used by the crossing conventions: a crossing path's first and
// last bonds, viewed as straight segments, must meet the relevant sides.

/// Closed segments pq and ab intersect (collinear overlaps included).
inline bool segments_intersect(Point p, Point q, Point a, Point b, double tol = kGeomTol) {
  const auto orient = [tol](Point o, Point u, Point w) {
    const double v = cross(u - o, w - o);
    return v > tol ? 1 : (v < -tol ? -1 : 0);
  };
  const auto on_segment = [tol](Point o, Point u, Point w) {
    return std::min(o.x, u.x) - tol <= w.x && w.x <= std::max(o.x, u.x) + tol &&
           std::min(o.y, u.y) - tol <= w.y && w.y <= std::max(o.y, u.y) + tol;
  };
  const int o1 = orient(p, q, a), o2 = orient(p, q, b), o3 = orient(a, b, p), o4 = orient(a, b, q);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p, q, a)) return true;
  if (o2 == 0 && on_segment(p, q, b)) return true;
  if (o3 == 0 && on_segment(a, b, p)) return true;
  if (o4 == 0 && on_segment(a, b, q)) return true;
  return false;
}

/// Closed segment pq meets the arc {center + r e^{i phi} : |phi - theta| <= half_angle}.
inline bool segment_meets_arc(Point p, Point q, Point center, double r, double theta, double half_angle,
                              double tol = kGeomTol) {
  const Point w0 = p - center;
  const Point d = q - p;
  const double a = dot(d, d);
  const double b = 2.0 * dot(w0, d);
  const double c = dot(w0, w0) - r * r;
  if (a == 0.0) return false;
  double disc = b * b - 4.0 * a * c;
  if (disc < -tol) return false;
  disc = std::max(disc, 0.0);
  const double sq = std::sqrt(disc);
  for (const double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
    if (t < -tol || t > 1.0 + tol) continue;
    const Point x = rotate(w0 + t * d, -theta);
    if (std::abs(std::atan2(x.y, x.x)) <= half_angle + 1e-12) return true;
  }
  return false;
}

}  // namespace nfpp
