#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "nfpp/boundary.hpp"
#include "nfpp/config.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/quad.hpp"
#include "nfpp/window.hpp"

namespace nfpp {

enum class Color : std::uint8_t { kYellow = 0, kBlue = 1 };

inline bool has_color(const Configuration& c, std::size_t i, Color col) { return c.blue(i) == (col == Color::kBlue); }

struct ClusterInfo {
  std::size_t size = 0;
  SiteCoord representative;  // lexicographically smallest site
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;  // plane bounding box of site centres
  double diameter = 0;  // L-infinity diameter of the embedded sites
};

struct ClusterLabeling {
  static constexpr std::int32_t kNone = -1;

  Window window;
  Color color = Color::kBlue;
  std::vector<std::int32_t> label;  // kNone for sites of the other colour or outside the restriction
  std::vector<ClusterInfo> clusters;

  std::int32_t at(SiteCoord v) const { return window.contains(v) ? label[window.index(v)] : kNone; }
  std::vector<SiteCoord> sites_of(std::int32_t id) const {
    std::vector<SiteCoord> out;
    for (std::size_t i = 0; i < label.size(); ++i)
      if (label[i] == id) out.push_back(window.site(i));
    return out;
  }
  SiteMask mask_of(std::int32_t id) const {
    SiteMask m(label.size(), 0);
    for (std::size_t i = 0; i < label.size(); ++i) m[i] = label[i] == id ? 1 : 0;
    return m;
  }
};

namespace detail {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // root is always the smallest index
  }
};

}  // namespace detail

/// Connected components of one colour, optionally restricted to a mask.
/// Ids are assigned in increasing order of representative site.
inline ClusterLabeling label_clusters(const Configuration& c, Color col, const SiteMask* restrict_to = nullptr) {
  const Window& w = c.window();
  const std::size_t n = w.size();
  ClusterLabeling L;
  L.window = w;
  L.color = col;
  L.label.assign(n, ClusterLabeling::kNone);
  auto member = [&](std::size_t i) { return has_color(c, i, col) && (!restrict_to || (*restrict_to)[i]); };
  detail::UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!member(i)) continue;
    for (int k = 3; k <= 5; ++k) {  // the three neighbours that precede i
      const std::size_t j = w.neighbor(i, k);
      if (j != kNoSite && member(j)) uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!member(i)) continue;
    const std::uint32_t r = uf.find(static_cast<std::uint32_t>(i));
    if (r == i) {
      L.label[i] = static_cast<std::int32_t>(L.clusters.size());
      ClusterInfo info;
      info.representative = w.site(i);
      const Point e = embed(info.representative);
      info.xmin = info.xmax = e.x;
      info.ymin = info.ymax = e.y;
      L.clusters.push_back(info);
    } else {
      L.label[i] = L.label[r];
    }
    ClusterInfo& info = L.clusters[L.label[i]];
    const Point e = embed(w.site(i));
    ++info.size;
    info.xmin = std::min(info.xmin, e.x);
    info.xmax = std::max(info.xmax, e.x);
    info.ymin = std::min(info.ymin, e.y);
    info.ymax = std::max(info.ymax, e.y);
  }
  for (ClusterInfo& info : L.clusters) info.diameter = std::max(info.xmax - info.xmin, info.ymax - info.ymin);
  return L;
}

/// Sites of the set reachable from it through sites of colour `col`.
inline SiteMask color_closure(const Configuration& c, const SiteMask& start, Color col) {
  const Window& w = c.window();
  SiteMask out = start;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (start[i]) stack.push_back(i);
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    w.for_each_neighbor(i, [&](std::size_t j) {
      if (!out[j] && has_color(c, j, col)) {
        out[j] = 1;
        stack.push_back(j);
      }
    });
  }
  return out;
}

inline bool masks_intersect(const SiteMask& a, const SiteMask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Surrounding

/// Largest distance from z to a point of the hexagon of v.
inline double hexagon_outer_radius(SiteCoord v, Point z) {
  double r = 0;
  for (const Point q : hexagon_corners(v)) r = std::max(r, norm2(q - z));
  return r;
}

/// Whether z lies in a bounded component of the plane minus the union of the
/// (closed) hexagons of S. Decided by flood fill over the complement of S
/// inside a frame two sites wider than S.
inline bool surrounds(const std::vector<SiteCoord>& S, Point z) {
  if (S.empty()) return false;
  for (const SiteCoord v : S)
    if (hexagon_contains(v, z)) return false;
  const Window w = bounding_window(S, 2);
  const SiteCoord zs = closest_site(z);
  if (!w.contains(zs) || w.on_edge(w.index(zs))) return false;
  const SiteMask in = sites_mask(w, S);
  const FillResult f = fill_holes(w, in);
  return f.filled[w.index(zs)] != 0;
}

struct EndpointCluster {
  /// Sites of the chosen blue cluster, or the single hexagon containing z.
  std::vector<SiteCoord> sites;
  bool fallback = true;
  /// Extra sites v for which cluster + {v} surrounds z (empty if it surrounds alone).
  std::vector<SiteCoord> augmentation;
  double outer_radius = 0;
};

/// The outermost blue cluster contained in the open disk of `radius` around z
/// that, alone or with one extra site, surrounds z. A cluster is contained
/// when all its hexagons lie in the disk. Falls back to the hexagon of z.
inline EndpointCluster outermost_surrounding_cluster(const Configuration& c, Point z, double radius) {
  if (!(radius > 0)) throw ArgumentError("outermost_surrounding_cluster: radius must be positive");
  const Window& W = c.window();
  const AxisBox need{z, radius + 1.0, radius + 1.0};
  W.require_covers(need, 0.0, "outermost_surrounding_cluster");
  const Window lw = Window::covering(AxisBox{z, radius, radius}, 0.0);

  SiteMask in_disk(lw.size(), 0);
  for (std::size_t i = 0; i < lw.size(); ++i) {
    const SiteCoord v = lw.site(i);
    in_disk[i] = W.contains(v) && hexagon_outer_radius(v, z) < radius ? 1 : 0;
  }
  // blue clusters of the disk sites
  detail::UnionFind uf(lw.size());
  auto blue_in = [&](std::size_t i) { return in_disk[i] && c.blue(lw.site(i)); };
  for (std::size_t i = 0; i < lw.size(); ++i) {
    if (!blue_in(i)) continue;
    for (int k = 3; k <= 5; ++k) {
      const std::size_t j = lw.neighbor(i, k);
      if (j != kNoSite && blue_in(j)) uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  std::vector<std::vector<SiteCoord>> groups;
  std::vector<std::int32_t> gid(lw.size(), -1);
  std::vector<std::uint8_t> contained;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    if (!blue_in(i)) continue;
    const std::uint32_t r = uf.find(static_cast<std::uint32_t>(i));
    if (gid[r] < 0) {
      gid[r] = static_cast<std::int32_t>(groups.size());
      groups.emplace_back();
      contained.push_back(1);
    }
    gid[i] = gid[r];
    groups[gid[i]].push_back(lw.site(i));
    // a blue neighbour outside the disk means the cluster leaves it
    for (const SiteCoord u : neighbors(lw.site(i))) {
      const bool inside_disk = lw.contains(u) && in_disk[lw.index(u)];
      if (!inside_disk && c.blue(u)) contained[gid[i]] = 0;
    }
  }

  const SiteCoord zs = closest_site(z);
  EndpointCluster best;
  bool have = false;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!contained[g]) continue;
    const std::vector<SiteCoord>& C = groups[g];
    bool z_in_c = false;
    for (const SiteCoord v : C) z_in_c = z_in_c || hexagon_contains(v, z);
    if (z_in_c) continue;
    const Window fw = bounding_window(C, 2);
    if (!fw.contains(zs) || fw.on_edge(fw.index(zs))) continue;
    const SiteMask cm = sites_mask(fw, C);
    std::vector<SiteCoord> aug;
    if (!fill_holes(fw, cm).filled[fw.index(zs)]) {
      // Any v completing a surrounding circuit must block every escape route,
      // so it lies on one particular route from z to the frame.
      std::vector<std::size_t> pred(fw.size(), kNoSite);
      std::vector<std::uint8_t> seen(fw.size(), 0);
      std::queue<std::size_t> q;
      q.push(fw.index(zs));
      seen[fw.index(zs)] = 1;
      std::size_t exit = kNoSite;
      while (!q.empty() && exit == kNoSite) {
        const std::size_t i = q.front();
        q.pop();
        if (fw.on_edge(i)) {
          exit = i;
          break;
        }
        fw.for_each_neighbor(i, [&](std::size_t j) {
          if (!seen[j] && !cm[j]) {
            seen[j] = 1;
            pred[j] = i;
            q.push(j);
          }
        });
      }
      for (std::size_t i = exit; i != kNoSite; i = pred[i]) {
        const SiteCoord v = fw.site(i);
        bool touches = false;
        fw.for_each_neighbor(i, [&](std::size_t j) { touches = touches || cm[j]; });
        if (!touches || hexagon_contains(v, z)) continue;
        SiteMask m2 = cm;
        m2[i] = 1;
        if (fill_holes(fw, m2).filled[fw.index(zs)]) aug.push_back(v);
      }
      if (aug.empty()) continue;
      std::sort(aug.begin(), aug.end());
    }
    double rad = 0;
    for (const SiteCoord v : C) rad = std::max(rad, hexagon_outer_radius(v, z));
    for (const SiteCoord v : aug) rad = std::max(rad, hexagon_outer_radius(v, z));
    // groups come in increasing representative order, so a strict comparison
    // keeps the lexicographically smaller cluster on ties
    if (!have || rad > best.outer_radius + 1e-12) {
      have = true;
      best.sites = C;
      best.fallback = false;
      best.augmentation = aug;
      best.outer_radius = rad;
    }
  }
  if (!have) {
    best.sites = {zs};
    best.fallback = true;
    best.augmentation.clear();
    best.outer_radius = hexagon_outer_radius(zs, z);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Innermost circuits and peeling

struct Circuit {
  std::vector<SiteCoord> sites;
};

/// Grow S through blue sites, fill holes, and return the ring of sites just
/// outside (all yellow by construction) as a counterclockwise circuit. None if
/// the growth or the ring reaches the window edge, or there is no yellow.
inline std::optional<Circuit> innermost_yellow_circuit(const Configuration& c, const std::vector<SiteCoord>& S) {
  const Window& w = c.window();
  if (S.empty()) throw ArgumentError("innermost_yellow_circuit: empty site set");
  const SiteMask s = sites_mask(w, S, "innermost_yellow_circuit");
  const FillResult in = fill_holes(w, color_closure(c, s, Color::kBlue));
  if (in.touches_edge) return std::nullopt;
  const SiteMask ring = outer_boundary(w, in.filled);
  SiteMask out = in.filled;
  for (std::size_t i = 0; i < w.size(); ++i) out[i] |= ring[i];
  const FillResult f = fill_holes(w, out);
  if (f.touches_edge) return std::nullopt;
  std::size_t first = 0;
  while (!f.filled[first]) ++first;
  Circuit circ;
  circ.sites = trace_outer_boundary(w, f.filled, w.site(first));
  return circ;
}

struct PeelLayers {
  /// outs[0] is the start set; outs[k] is the filled region bounded by the
  /// k-th yellow circuit.
  std::vector<SiteMask> outs;
  std::vector<SiteMask> rings;  // rings[k-1] is the k-th circuit
  /// Growth reached the window edge before meeting `stop`.
  bool escaped = false;
};

/// Repeatedly peel innermost yellow circuits around `start` until the next
/// region would meet `stop`.
inline PeelLayers peel_layers(const Configuration& c, const SiteMask& start, const SiteMask& stop) {
  const Window& w = c.window();
  PeelLayers P;
  P.outs.push_back(start);
  for (;;) {
    const FillResult in = fill_holes(w, color_closure(c, P.outs.back(), Color::kBlue));
    if (in.touches_edge) {
      P.escaped = true;
      break;
    }
    if (masks_intersect(in.filled, stop)) break;
    const SiteMask ring = outer_boundary(w, in.filled);
    SiteMask grown = in.filled;
    for (std::size_t i = 0; i < w.size(); ++i) grown[i] |= ring[i];
    const FillResult f = fill_holes(w, grown);
    if (f.touches_edge) {
      P.escaped = true;
      break;
    }
    if (masks_intersect(f.filled, stop)) break;
    P.outs.push_back(f.filled);
    P.rings.push_back(ring);
  }
  return P;
}

// ---------------------------------------------------------------------------
// Cluster graph

struct ClusterGraph {
  ClusterLabeling labeling;  // blue clusters of the whole window
  std::vector<std::vector<std::int32_t>> adj;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // sorted, first < second

  std::size_t node_count() const { return adj.size(); }
};

/// Nodes are blue clusters; two are joined when some yellow site of `region`
/// (whole window if null) touches both.
inline ClusterGraph build_cluster_graph(const Configuration& c, const SiteMask* region = nullptr) {
  ClusterGraph g;
  g.labeling = label_clusters(c, Color::kBlue);
  const Window& w = c.window();
  std::vector<std::pair<std::int32_t, std::int32_t>> es;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (c.blue(i) || (region && !(*region)[i])) continue;
    std::int32_t ids[6];
    int n = 0;
    w.for_each_neighbor(i, [&](std::size_t j) {
      if (g.labeling.label[j] != ClusterLabeling::kNone) ids[n++] = g.labeling.label[j];
    });
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (ids[a] < ids[b]) es.emplace_back(ids[a], ids[b]);
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  g.edges = es;
  g.adj.assign(g.labeling.clusters.size(), {});
  for (const auto& [a, b] : es) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  return g;
}

/// Number of steps of the shortest chain from a to b, or none if unreachable.
inline std::optional<int> chain_distance(const ClusterGraph& g, std::int32_t a, std::int32_t b) {
  const auto n = static_cast<std::int32_t>(g.node_count());
  if (a < 0 || b < 0 || a >= n || b >= n) throw ArgumentError("chain_distance: not a node");
  std::vector<int> d(n, -1);
  std::queue<std::int32_t> q;
  d[a] = 0;
  q.push(a);
  while (!q.empty()) {
    const std::int32_t u = q.front();
    q.pop();
    if (u == b) return d[u];
    for (const std::int32_t v : g.adj[u])
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push(v);
      }
  }
  return std::nullopt;
}

}  // namespace nfpp
