#pragma once

// Slow reference implementations used only by tests. They work on plain
// coordinate maps with adjacency taken from Euclidean distances of site
// centres, so they share no code paths with the library's window indexing.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "nfpp/config.hpp"
#include "nfpp/lattice.hpp"
#include "nfpp/window.hpp"

namespace oracle {

using nfpp::SiteCoord;

struct Pt {
  double x, y;
};

inline Pt centre(SiteCoord v) { return {v.x + 0.5 * v.y, v.y * std::sqrt(3.0) / 2.0}; }

inline bool adjacent(SiteCoord a, SiteCoord b) {
  const Pt p = centre(a), q = centre(b);
  return std::abs(std::hypot(p.x - q.x, p.y - q.y) - 1.0) < 1e-9;
}

/// The six sites at centre distance 1, found by scanning a 5x5 axial block.
inline std::vector<SiteCoord> nbrs(SiteCoord v) {
  std::vector<SiteCoord> out;
  for (int dy = -2; dy <= 2; ++dy)
    for (int dx = -2; dx <= 2; ++dx) {
      const SiteCoord u{v.x + dx, v.y + dy};
      if (adjacent(u, v)) out.push_back(u);
    }
  return out;
}

/// Colouring over an explicit site set.
using Coloring = std::map<SiteCoord, bool>;  // true = blue

inline Coloring random_coloring(const std::vector<SiteCoord>& sites, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution b(p);
  Coloring c;
  for (const SiteCoord v : sites) c[v] = b(rng);
  return c;
}

inline Coloring coloring_of(const nfpp::Configuration& c) {
  Coloring out;
  const nfpp::Window& w = c.window();
  for (std::size_t i = 0; i < w.size(); ++i) out[w.site(i)] = c.blue(i);
  return out;
}

inline nfpp::Configuration to_configuration(const nfpp::Window& w, const Coloring& col, double p = 0.5) {
  std::vector<std::uint8_t> m(w.size(), 0);
  for (const auto& [v, b] : col)
    if (b && w.contains(v)) m[w.index(v)] = 1;
  return nfpp::Configuration::from_colors(w, m, p);
}

/// Bellman-Ford: minimum over paths inside `allowed` (all sites of `col` if
/// empty) of the number of yellow sites, from any of A to any of B.
inline int min_passage(const Coloring& col, const std::set<SiteCoord>& A, const std::set<SiteCoord>& B,
                       const std::set<SiteCoord>* allowed = nullptr) {
  const int INF = 1 << 29;
  std::map<SiteCoord, int> d;
  auto ok = [&](SiteCoord v) { return col.count(v) && (!allowed || allowed->count(v)); };
  auto w = [&](SiteCoord v) { return col.at(v) ? 0 : 1; };
  for (const auto& [v, b] : col) d[v] = INF;
  for (const SiteCoord a : A)
    if (ok(a)) d[a] = w(a);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [v, b] : col) {
      if (!ok(v) || d[v] >= INF) continue;
      for (const SiteCoord u : nbrs(v))
        if (ok(u) && d[v] + w(u) < d[u]) {
          d[u] = d[v] + w(u);
          changed = true;
        }
    }
  }
  int best = INF;
  for (const SiteCoord b : B)
    if (ok(b)) best = std::min(best, d[b]);
  return best;
}

/// Connected components of one colour by repeated flood fill.
inline std::vector<std::set<SiteCoord>> components(const Coloring& col, bool blue,
                                                   const std::set<SiteCoord>* within = nullptr) {
  std::vector<std::set<SiteCoord>> out;
  std::set<SiteCoord> seen;
  for (const auto& [v, b] : col) {
    if (b != blue || seen.count(v) || (within && !within->count(v))) continue;
    std::set<SiteCoord> comp{v};
    std::vector<SiteCoord> st{v};
    seen.insert(v);
    while (!st.empty()) {
      const SiteCoord u = st.back();
      st.pop_back();
      for (const SiteCoord x : nbrs(u)) {
        const auto it = col.find(x);
        if (it == col.end() || it->second != blue || seen.count(x) || (within && !within->count(x))) continue;
        seen.insert(x);
        comp.insert(x);
        st.push_back(x);
      }
    }
    out.push_back(comp);
  }
  return out;
}

/// Winding number of the closed polygon `poly` around z.
inline int winding(const std::vector<Pt>& poly, Pt z) {
  double total = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Pt a = poly[i], b = poly[(i + 1) % poly.size()];
    const double a1 = std::atan2(a.y - z.y, a.x - z.x), a2 = std::atan2(b.y - z.y, b.x - z.x);
    double d = a2 - a1;
    while (d > M_PI) d -= 2 * M_PI;
    while (d < -M_PI) d += 2 * M_PI;
    total += d;
  }
  return static_cast<int>(std::lround(total / (2 * M_PI)));
}

/// Crossing clusters of an annulus by flood fill: components of each colour
/// among the annulus sites `D` that contain both a site next to `inner` and a
/// site next to `outer`. Arms of a valid alternating family lie in distinct
/// crossing clusters, which alternate in colour around the annulus.
struct CrossingClusters {
  int blue = 0;
  int yellow = 0;
};

inline CrossingClusters crossing_clusters(const Coloring& col, const std::set<SiteCoord>& D,
                                          const std::set<SiteCoord>& inner, const std::set<SiteCoord>& outer) {
  auto touches = [&](SiteCoord v, const std::set<SiteCoord>& S) {
    for (const SiteCoord u : nbrs(v))
      if (S.count(u)) return true;
    return false;
  };
  CrossingClusters out;
  for (const bool blue : {true, false})
    for (const auto& comp : components(col, blue, &D)) {
      bool in = false, ex = false;
      for (const SiteCoord v : comp) {
        in = in || touches(v, inner);
        ex = ex || touches(v, outer);
      }
      if (in && ex) ++(blue ? out.blue : out.yellow);
    }
  return out;
}

}  // namespace oracle
