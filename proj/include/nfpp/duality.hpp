#pragma once

// Max-family side of the min-path / max-separator dualities, computed without
// any shortest-path code: flows for quads, peeling for cluster pairs, and
// exhaustive search for the strip.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "nfpp/boundary.hpp"
#include "nfpp/clusters.hpp"
#include "nfpp/config.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/fpp.hpp"
#include "nfpp/maxflow.hpp"
#include "nfpp/quad.hpp"

namespace nfpp {

namespace detail {

// Quad layout transferred onto the configuration's window.
struct QuadMasks {
  SiteMask inside;
  std::array<SiteMask, 4> arc;
};

inline QuadMasks quad_masks(const Configuration& c, const DiscreteQuad& q) {
  const QuadLayout L = layout_quad(q);
  const Window& w = c.window();
  QuadMasks m;
  m.inside = sites_mask(w, q.sites, "quad");
  for (int k = 0; k < 4; ++k) m.arc[k].assign(w.size(), 0);
  for (std::size_t i = 0; i < L.window.size(); ++i) {
    const SiteCoord v = L.window.site(i);
    for (int k = 0; k < 4; ++k)
      if (L.arc[k][i]) m.arc[k][w.index(v)] = 1;
  }
  return m;
}

}  // namespace detail

/// Maximum number of vertex-disjoint yellow paths in D from arc (v2 v3) to
/// arc (v4 v1).
inline int max_disjoint_yellow_crossings(const Configuration& c, const DiscreteQuad& q) {
  const detail::QuadMasks m = detail::quad_masks(c, q);
  const Window& w = c.window();
  SiteMask yellow(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) yellow[i] = m.inside[i] && !c.blue(i);
  return max_vertex_disjoint_paths(w, yellow, m.arc[1], m.arc[3]);
}

/// T((v1 v2), (v3 v4)) with every path site in D.
inline int quad_passage_time(const Configuration& c, const DiscreteQuad& q) {
  const detail::QuadMasks m = detail::quad_masks(c, q);
  return passage_time(c, m.arc[0], m.arc[2], &m.inside, false).time;
}

struct SeparatingCircuits {
  int count = 0;
  /// False when peeling reached the window edge; count is then meaningless.
  bool determinate = true;
  int n1 = 0;  // circuits peeled around the first cluster in the best pair
  int n2 = 0;
};

/// Peels innermost yellow circuits outward from each cluster (stopping before
/// a grown region would reach the other cluster) and returns the largest
/// k1 + k2 for which the k1-th region around C and the k2-th around C' are
/// disjoint.
inline SeparatingCircuits max_disjoint_separating_circuits(const Configuration& c, const std::vector<SiteCoord>& C,
                                                           const std::vector<SiteCoord>& Cp) {
  if (C.empty() || Cp.empty()) throw ArgumentError("max_disjoint_separating_circuits: empty cluster");
  const Window& w = c.window();
  const SiteMask a = sites_mask(w, C, "cluster C");
  const SiteMask b = sites_mask(w, Cp, "cluster C'");
  if (masks_intersect(a, b)) throw ArgumentError("max_disjoint_separating_circuits: clusters must be distinct");
  const PeelLayers P = peel_layers(c, a, b);
  const PeelLayers Q = peel_layers(c, b, a);
  SeparatingCircuits r;
  if (P.escaped || Q.escaped) {
    r.determinate = false;
    return r;
  }
  // valid pairs are closed downward in both indices
  int k2 = static_cast<int>(Q.outs.size()) - 1;
  r.count = -1;
  for (int k1 = 0; k1 < static_cast<int>(P.outs.size()); ++k1) {
    while (k2 >= 0 && masks_intersect(P.outs[k1], Q.outs[k2])) --k2;
    if (k2 < 0) break;
    if (k1 + k2 > r.count) {
      r.count = k1 + k2;
      r.n1 = k1;
      r.n2 = k2;
    }
  }
  if (r.count < 0) r.count = 0;
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive separator search on toy strips

struct StripSeparators {
  int count = 0;
  std::vector<std::uint64_t> separators;  // every yellow minimal separator found (bit i = i-th site of G)
  std::vector<std::uint64_t> family;      // one maximum disjoint family
};

/// Exhaustive maximum number of pairwise disjoint yellow sets each separating
/// A from B inside G (the truncated strip, A and B included). Every minimal
/// separator is N(K) for K the component of A in its complement, so all
/// connected K around A with a yellow neighbourhood are enumerated; each
/// candidate is checked to separate and to be connected (a path or circuit).
inline StripSeparators strip_separator_search(const Configuration& c, const std::vector<SiteCoord>& A,
                                              const std::vector<SiteCoord>& B, const std::vector<SiteCoord>& G) {
  if (G.size() > 64) throw ArgumentError("strip_separator_count_bruteforce: instance too large");
  {
    int rmin = G.at(0).y, rmax = rmin, xmin = G[0].x, xmax = xmin;
    for (const SiteCoord v : G) {
      rmin = std::min(rmin, v.y);
      rmax = std::max(rmax, v.y);
      xmin = std::min(xmin, v.x);
      xmax = std::max(xmax, v.x);
    }
    std::size_t free_sites = G.size() - A.size() - B.size();
    if (rmax - rmin + 1 > 8 || xmax - xmin + 1 > 14 || free_sites > 24)
      throw ArgumentError("strip_separator_count_bruteforce: instance too large (height <= 8, length <= 12)");
  }
  const int n = static_cast<int>(G.size());
  std::vector<std::uint64_t> nb(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (are_neighbors(G[i], G[j])) nb[i] |= 1ULL << j;
  auto index_of = [&](SiteCoord v) {
    const auto it = std::find(G.begin(), G.end(), v);
    if (it == G.end()) throw ArgumentError("strip_separator_count_bruteforce: endpoint not in strip");
    return static_cast<int>(it - G.begin());
  };
  std::uint64_t amask = 0, bmask = 0, blue = 0;
  for (const SiteCoord v : A) amask |= 1ULL << index_of(v);
  for (const SiteCoord v : B) bmask |= 1ULL << index_of(v);
  for (int i = 0; i < n; ++i)
    if (c.blue(G[i])) blue |= 1ULL << i;
  if (amask & bmask) throw ArgumentError("strip_separator_count_bruteforce: A and B overlap");
  auto neighborhood = [&](std::uint64_t s) {
    std::uint64_t out = 0;
    for (std::uint64_t t = s; t; t &= t - 1) out |= nb[std::countr_zero(t)];
    return out & ~s;
  };
  auto component = [&](std::uint64_t seed, std::uint64_t allowed) {
    std::uint64_t comp = seed & allowed, frontier = comp;
    while (frontier) {
      const std::uint64_t next = neighborhood(frontier) & allowed & ~comp;
      comp |= next;
      frontier = next;
    }
    return comp;
  };
  const std::uint64_t all = n == 64 ? ~0ULL : (1ULL << n) - 1;

  StripSeparators R;
  // A itself may be disconnected in G; its component structure is handled by
  // growing from all of A at once.
  struct Frame {
    std::uint64_t K, X;
  };
  std::vector<Frame> stack{{amask, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const std::uint64_t N = neighborhood(f.K) & all;
    if (N & bmask) continue;
    // forced: blue frontier sites join K
    const std::uint64_t forced = N & blue & ~f.X;
    if (N & blue & f.X) continue;
    if (forced) {
      stack.push_back({f.K | forced, f.X});
      continue;
    }
    const std::uint64_t open = N & ~f.X;
    if (!open) {
      // S = N is yellow; keep it if it is a minimal A-B separator
      const std::uint64_t S = N;
      const std::uint64_t bc = component(bmask, all & ~S);
      if (bc & f.K) continue;
      if ((neighborhood(bc) & all) != S) continue;
      if (component(S & -S, S) != S) continue;  // must be a connected yellow set
      R.separators.push_back(S);
      continue;
    }
    const std::uint64_t pick = open & -open;
    stack.push_back({f.K, f.X | pick});
    stack.push_back({f.K | pick, f.X});
  }
  std::sort(R.separators.begin(), R.separators.end());
  R.separators.erase(std::unique(R.separators.begin(), R.separators.end()), R.separators.end());

  // maximum disjoint family
  std::vector<std::uint64_t> cur;
  const auto& seps = R.separators;
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t used) -> void {
    if (cur.size() > R.family.size()) R.family = cur;
    for (std::size_t i = from; i < seps.size(); ++i) {
      if (seps[i] & used) continue;
      if (cur.size() + 1 + (seps.size() - i - 1) <= R.family.size()) return;
      cur.push_back(seps[i]);
      self(self, i + 1, used | seps[i]);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  R.count = static_cast<int>(R.family.size());
  return R;
}

inline int strip_separator_count_bruteforce(const Configuration& c, const std::vector<SiteCoord>& A,
                                            const std::vector<SiteCoord>& B, const std::vector<SiteCoord>& G) {
  return strip_separator_search(c, A, B, G).count;
}

}  // namespace nfpp
