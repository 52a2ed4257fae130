#pragma once

// Arm events in box annuli A(z; r, R) = Lambda_R(z) \ Lambda_r(z).
//
// Sites are split by their hexagons: D (meets the closed annulus), I (inside
// the open inner box), E (outside the closed outer box). Blue/yellow
// interfaces are traced on hexagon edges between D sites; a curve stops at a
// corner whose third hexagon is not in D, and that hexagon's class labels the
// end. Curves with one end on I and the other on E cross the annulus.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nfpp/clusters.hpp"
#include "nfpp/config.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/maxflow.hpp"
#include "nfpp/parallel.hpp"
#include "nfpp/stats.hpp"
#include "nfpp/window.hpp"

namespace nfpp {

enum class ArmKind { kAlternating, kMonochromatic };

struct ArmEventSpec {
  Point center;
  double r = 1.0;
  double R = 1.0;
  ArmKind kind = ArmKind::kAlternating;
  int k = 4;
  Color color = Color::kBlue;                // monochromatic only
  std::optional<double> half_plane;          // theta of z + e^{i theta}{Im >= 0}
};

enum class SiteClass : std::uint8_t { kAnnulus, kInner, kOuter, kExcluded };

inline bool hexagon_meets_closed_box(SiteCoord v, const AxisBox& b, double tol = 1e-12) {
  const auto corners = hexagon_corners(v);
  double hx0 = 1e300, hx1 = -1e300, hy0 = 1e300, hy1 = -1e300;
  for (const Point& q : corners) {
    hx0 = std::min(hx0, q.x);
    hx1 = std::max(hx1, q.x);
    hy0 = std::min(hy0, q.y);
    hy1 = std::max(hy1, q.y);
  }
  if (hx1 < b.xmin() - tol || hx0 > b.xmax() + tol || hy1 < b.ymin() - tol || hy0 > b.ymax() + tol) return false;
  const std::array<Point, 4> rect{{{b.xmin(), b.ymin()}, {b.xmax(), b.ymin()}, {b.xmax(), b.ymax()}, {b.xmin(), b.ymax()}}};
  const Point c = embed(v);
  for (int k = 0; k < 3; ++k) {
    const Point n = embed(kNeighborOffsets[k]);
    const double hc = dot(n, c);
    double lo = 1e300, hi = -1e300;
    for (const Point& q : rect) {
      lo = std::min(lo, dot(n, q));
      hi = std::max(hi, dot(n, q));
    }
    if (hi < hc - 0.5 - tol || lo > hc + 0.5 + tol) return false;
  }
  return true;
}

// The half-plane cut only removes annulus sites; the two boxes stay whole as
// the places arms start and end.
inline SiteClass classify_site(SiteCoord v, const ArmEventSpec& s) {
  double far = 0;
  for (const Point q : hexagon_corners(v)) far = std::max(far, norm_inf(q - s.center));
  if (far < s.r) return SiteClass::kInner;
  if (!hexagon_meets_closed_box(v, AxisBox{s.center, s.R, s.R})) return SiteClass::kOuter;
  if (s.half_plane) {
    const Point q = rotate(embed(v) - s.center, -*s.half_plane);
    if (q.y < -1e-12) return SiteClass::kExcluded;
  }
  return SiteClass::kAnnulus;
}

/// Class of every window site for the annulus of `s`.
struct AnnulusLayout {
  std::vector<SiteClass> cls;
  SiteMask annulus;  // D
  SiteMask inner_terminal;  // D sites adjacent to I
  SiteMask outer_terminal;  // D sites adjacent to E
};

inline void validate_spec(const ArmEventSpec& s) {
  if (!(s.r >= 1.0 && s.R >= s.r)) throw ArgumentError("arm event: need 1 <= r <= R");
  if (s.k < 1) throw ArgumentError("arm event: need k >= 1");
}

inline AnnulusLayout annulus_layout(const Configuration& c, const ArmEventSpec& s) {
  const Window& w = c.window();
  w.require_covers(AxisBox{s.center, s.R, s.R}, 1.5, "arm event");
  AnnulusLayout L;
  L.cls.resize(w.size());
  L.annulus.assign(w.size(), 0);
  L.inner_terminal.assign(w.size(), 0);
  L.outer_terminal.assign(w.size(), 0);
  bool any_inner = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    L.cls[i] = classify_site(w.site(i), s);
    L.annulus[i] = L.cls[i] == SiteClass::kAnnulus;
    any_inner = any_inner || L.cls[i] == SiteClass::kInner;
  }
  if (!any_inner) throw ArgumentError("arm event: inner box contains no whole hexagon");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!L.annulus[i]) continue;
    w.for_each_neighbor(i, [&](std::size_t j) {
      if (L.cls[j] == SiteClass::kInner) L.inner_terminal[i] = 1;
      if (L.cls[j] == SiteClass::kOuter) L.outer_terminal[i] = 1;
    });
  }
  return L;
}

/// Number of interface curves joining the inner and the outer boundary.
inline int count_crossing_interfaces(const Configuration& c, const AnnulusLayout& L) {
  const Window& w = c.window();
  auto cls_of = [&](std::size_t j) { return j == kNoSite ? SiteClass::kOuter : L.cls[j]; };
  int crossing = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!L.annulus[i] || !c.blue(i)) continue;
    for (int d = 0; d < 6; ++d) {
      const std::size_t j = w.neighbor(i, d);
      if (j == kNoSite || !L.annulus[j] || c.blue(j)) continue;
      // edge (blue i, yellow j); it starts a curve if the corner behind it is an end
      const std::size_t back = w.neighbor(i, wrap6(d - 1));
      if (back != kNoSite && L.annulus[back]) continue;
      const SiteClass start = cls_of(back);
      std::size_t u = i, v = j;
      int dir = d;
      SiteClass end;
      std::size_t guard = 0;
      for (;;) {
        const std::size_t s = w.neighbor(u, wrap6(dir + 1));
        if (s == kNoSite || !L.annulus[s]) {
          end = cls_of(s);
          break;
        }
        if (c.blue(s)) {
          u = s;
          dir = wrap6(dir - 1);
        } else {
          v = s;
          dir = wrap6(dir + 1);
        }
        if (++guard > 12 * w.size()) throw std::logic_error("count_crossing_interfaces: runaway trace");
      }
      (void)v;
      if ((start == SiteClass::kInner && end == SiteClass::kOuter) ||
          (start == SiteClass::kOuter && end == SiteClass::kInner))
        ++crossing;
    }
  }
  return crossing;
}

inline int count_crossing_interfaces(const Configuration& c, Point z, double r, double R) {
  ArmEventSpec s;
  s.center = z;
  s.r = r;
  s.R = R;
  validate_spec(s);
  return count_crossing_interfaces(c, annulus_layout(c, s));
}

/// Maximum number of disjoint arms of one colour.
inline int max_monochromatic_arms(const Configuration& c, const AnnulusLayout& L, Color col) {
  const Window& w = c.window();
  SiteMask member(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) member[i] = L.annulus[i] && has_color(c, i, col);
  return max_vertex_disjoint_paths(w, member, L.inner_terminal, L.outer_terminal);
}

inline void check_arm_kind(const ArmEventSpec& s) {
  validate_spec(s);
  if (s.kind == ArmKind::kAlternating && !s.half_plane && s.k % 2 != 0)
    throw UnsupportedError("arm event: alternating sequences in the full annulus need an even number of arms");
}

/// Same as below with a layout computed once for the window.
inline bool detect_arm_event(const Configuration& c, const ArmEventSpec& s, const AnnulusLayout& L) {
  check_arm_kind(s);
  if (s.r == s.R) return true;
  if (s.kind == ArmKind::kMonochromatic) return max_monochromatic_arms(c, L, s.color) >= s.k;
  const int m = count_crossing_interfaces(c, L);
  // in a half-annulus the sequence is linear: k alternating arms need k-1 interfaces
  return s.half_plane ? m >= s.k - 1 : m >= s.k;
}

inline bool detect_arm_event(const Configuration& c, const ArmEventSpec& s) {
  check_arm_kind(s);
  if (s.r == s.R) return true;  // the empty annulus: every configuration qualifies
  return detect_arm_event(c, s, annulus_layout(c, s));
}

inline constexpr std::uint64_t kArmStream = 0xa4;

/// Window used for one trial of an arm estimate.
inline Window arm_window(const ArmEventSpec& s) { return Window::covering(AxisBox{s.center, s.R, s.R}, 2.0); }

inline MCEstimate estimate_arm_probability(const ArmEventSpec& s, double p, std::size_t samples, std::uint64_t seed,
                                           unsigned threads = 1) {
  if (samples < 1) throw ArgumentError("estimate_arm_probability: samples must be at least 1");
  check_arm_kind(s);
  const Window w = arm_window(s);
  std::optional<AnnulusLayout> L;
  if (s.r < s.R) L = annulus_layout(Configuration::sample(w, p, seed), s);
  const std::vector<double> hits = parallel_map<double>(samples, threads, [&](std::size_t t) {
    if (!L) return 1.0;
    const Configuration c = Configuration::sample(w, p, derive_seed(seed, kArmStream, t));
    return detect_arm_event(c, s, *L) ? 1.0 : 0.0;
  });
  return estimate_from(hits);
}

}  // namespace nfpp
