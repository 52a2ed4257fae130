#pragma once

// Discrete quads: a simply connected site set D with four marked sites on
// its inner boundary in counterclockwise order.

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "nfpp/boundary.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/window.hpp"

namespace nfpp {

struct DiscreteQuad {
  std::vector<SiteCoord> sites;
  std::array<SiteCoord, 4> marks{};
};

/// A validated quad laid out on a private window with one free ring around D.
struct QuadLayout {
  Window window;
  SiteMask inside;
  std::vector<SiteCoord> circuit;   // inner boundary, counterclockwise, starting at v1
  std::array<std::size_t, 4> mark_pos{};  // positions of v1..v4 in circuit; mark_pos[0] == 0
  /// arc[k] marks the sites of arc (v_{k+1} v_{k+2}); arcs share their endpoints.
  std::array<SiteMask, 4> arc;
};

inline Window bounding_window(const std::vector<SiteCoord>& s, int pad) {
  if (s.empty()) throw ArgumentError("bounding_window: empty site set");
  int r0 = s[0].y, r1 = s[0].y, c0 = s[0].x + floordiv2(s[0].y), c1 = c0;
  for (const SiteCoord v : s) {
    const int c = v.x + floordiv2(v.y);
    r0 = std::min(r0, v.y);
    r1 = std::max(r1, v.y);
    c0 = std::min(c0, c);
    c1 = std::max(c1, c);
  }
  return Window(c0 - pad, c1 + pad, r0 - pad, r1 + pad);
}

/// Throws ArgumentError unless D is connected and simply connected, its inner
/// boundary is a single circuit visiting each boundary site once, and the
/// marks are distinct boundary sites in counterclockwise order.
inline QuadLayout layout_quad(const DiscreteQuad& q) {
  QuadLayout L;
  L.window = bounding_window(q.sites, 2);
  const Window& w = L.window;
  L.inside = sites_mask(w, q.sites, "quad");
  const auto n_inside = static_cast<std::size_t>(std::count(L.inside.begin(), L.inside.end(), 1));
  if (n_inside != q.sites.size()) throw ArgumentError("quad: duplicate sites");

  // connected
  {
    std::vector<std::uint8_t> seen(w.size(), 0);
    std::vector<std::size_t> stack{w.index(q.sites[0])};
    seen[stack[0]] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++count;
      w.for_each_neighbor(i, [&](std::size_t j) {
        if (L.inside[j] && !seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
      });
    }
    if (count != n_inside) throw ArgumentError("quad: site set is not connected");
  }
  // simply connected
  {
    const FillResult f = fill_holes(w, L.inside);
    if (f.filled != L.inside) throw ArgumentError("quad: site set has holes");
  }

  const SiteCoord start = *std::min_element(q.sites.begin(), q.sites.end());
  std::vector<SiteCoord> cyc = trace_outer_boundary(w, L.inside, start);
  const SiteMask bnd = inner_boundary(w, L.inside);
  const auto n_bnd = static_cast<std::size_t>(std::count(bnd.begin(), bnd.end(), 1));
  {
    std::vector<SiteCoord> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ArgumentError("quad: inner boundary is not a simple circuit");
  }
  if (cyc.size() != n_bnd || cyc.size() < 3) throw ArgumentError("quad: inner boundary is not a single circuit");

  const auto v1 = std::find(cyc.begin(), cyc.end(), q.marks[0]);
  if (v1 == cyc.end()) throw ArgumentError("quad: mark is not on the inner boundary");
  std::rotate(cyc.begin(), v1, cyc.end());
  const std::size_t n = cyc.size();
  std::array<std::size_t, 4> pos{};
  for (int k = 0; k < 4; ++k) {
    const auto it = std::find(cyc.begin(), cyc.end(), q.marks[k]);
    if (it == cyc.end()) throw ArgumentError("quad: mark is not on the inner boundary");
    pos[k] = static_cast<std::size_t>(it - cyc.begin());
  }
  if (!(pos[0] < pos[1] && pos[1] < pos[2] && pos[2] < pos[3]))
    throw ArgumentError("quad: marks must be distinct and counterclockwise");
  L.circuit = cyc;
  L.mark_pos = pos;
  for (int k = 0; k < 4; ++k) {
    L.arc[k].assign(w.size(), 0);
    const std::size_t a = pos[k], b = k == 3 ? n : pos[k + 1];
    for (std::size_t t = a; t <= b; ++t) L.arc[k][w.index(cyc[t % n])] = 1;
  }
  return L;
}

inline bool is_valid_quad(const DiscreteQuad& q) {
  try {
    layout_quad(q);
    return true;
  } catch (const ArgumentError&) {
    return false;
  }
}

/// Axial parallelogram {0 <= x < a, 0 <= y < b} shifted by `origin`, marked
/// at its corners: v1 top-left, v2 bottom-left, v3 bottom-right, v4 top-right.
inline DiscreteQuad parallelogram_quad(SiteCoord origin, int a, int b) {
  if (a < 2 || b < 2) throw ArgumentError("parallelogram_quad: sides must be at least 2");
  DiscreteQuad q;
  for (int y = 0; y < b; ++y)
    for (int x = 0; x < a; ++x) q.sites.push_back(origin + SiteCoord{x, y});
  q.marks = {origin + SiteCoord{0, b - 1}, origin, origin + SiteCoord{a - 1, 0}, origin + SiteCoord{a - 1, b - 1}};
  return q;
}

}  // namespace nfpp
