#pragma once

// Boundary walks. A walk state is a pair (u inside, w = u + d_i outside);
// pivoting around the shared corner with s = u + d_{i+1} moves along the
// boundary counterclockwise, keeping the inside on the left.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "nfpp/errors.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/window.hpp"

namespace nfpp {

/// Sites of the inside set met along the outer boundary walk of the
/// component containing `start`, counterclockwise. `start` must be the
/// lexicographically smallest site of its component. Sites may repeat when
/// the component has cut points.
template <class Inside>
std::vector<SiteCoord> trace_outer_boundary(SiteCoord start, Inside&& inside, std::size_t max_steps = 100000000) {
  std::vector<SiteCoord> out{start};
  SiteCoord u = start;
  int i = 4;  // start + (0,-1) lies in a lower row, so it is outside
  const SiteCoord u0 = u;
  const int i0 = i;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const SiteCoord s = u + kNeighborOffsets[wrap6(i + 1)];
    if (inside(s)) {
      u = s;
      i = wrap6(i - 1);
      if (!(u == u0 && i == i0)) out.push_back(u);
    } else {
      i = wrap6(i + 1);
    }
    if (u == u0 && i == i0) {
      if (out.size() > 1 && out.back() == u0) out.pop_back();
      return out;
    }
  }
  throw ArgumentError("trace_outer_boundary: walk did not close");
}

/// Same walk over a window mask.
inline std::vector<SiteCoord> trace_outer_boundary(const Window& w, const SiteMask& m, SiteCoord start) {
  return trace_outer_boundary(start, [&](SiteCoord v) { return w.contains(v) && m[w.index(v)] != 0; });
}

/// Sites of the set with at least one neighbour outside it.
inline SiteMask inner_boundary(const Window& w, const SiteMask& m) {
  SiteMask b(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!m[i]) continue;
    bool edge = false;
    for (int k = 0; k < 6 && !edge; ++k) {
      const std::size_t j = w.neighbor(i, k);
      edge = j == kNoSite || !m[j];
    }
    b[i] = edge ? 1 : 0;
  }
  return b;
}

/// Sites outside the set adjacent to it (only those inside the window).
inline SiteMask outer_boundary(const Window& w, const SiteMask& m) {
  SiteMask b(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!m[i]) continue;
    w.for_each_neighbor(i, [&](std::size_t j) {
      if (!m[j]) b[j] = 1;
    });
  }
  return b;
}

struct FillResult {
  SiteMask filled;
  /// The set, or something it encloses, reaches the window edge; the fill is
  /// then not trustworthy.
  bool touches_edge = false;
};

/// The set together with every site not connected to the window edge in its
/// complement.
inline FillResult fill_holes(const Window& w, const SiteMask& m) {
  FillResult r;
  r.filled.assign(w.size(), 1);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w.on_edge(i)) continue;
    if (m[i]) {
      r.touches_edge = true;
      continue;
    }
    if (r.filled[i]) {
      r.filled[i] = 0;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    w.for_each_neighbor(i, [&](std::size_t j) {
      if (!m[j] && r.filled[j]) {
        r.filled[j] = 0;
        stack.push_back(j);
      }
    });
  }
  return r;
}

}  // namespace nfpp
