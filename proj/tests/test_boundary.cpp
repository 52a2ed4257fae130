#include <gtest/gtest.h>

#include <random>
#include <set>

#include "nfpp/boundary.hpp"
#include "oracles.hpp"

using namespace nfpp;

namespace {

// random connected blob grown from the origin
std::set<SiteCoord> random_blob(std::mt19937_64& rng, int size, int radius) {
  std::set<SiteCoord> s{{0, 0}};
  std::vector<SiteCoord> list{{0, 0}};
  while (static_cast<int>(s.size()) < size) {
    const SiteCoord v = list[rng() % list.size()];
    const auto nb = oracle::nbrs(v);
    const SiteCoord u = nb[rng() % nb.size()];
    if (graph_distance(u, {0, 0}) > radius || s.count(u)) continue;
    s.insert(u);
    list.push_back(u);
  }
  return s;
}

double signed_area(const std::vector<SiteCoord>& poly) {
  double a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = embed(poly[i]), q = embed(poly[(i + 1) % poly.size()]);
    a += cross(p, q);
  }
  return 0.5 * a;
}

}  // namespace

TEST(Boundary, SingleSite) {
  const auto t = trace_outer_boundary({3, 4}, [](SiteCoord v) { return v == SiteCoord{3, 4}; });
  EXPECT_EQ(t, (std::vector<SiteCoord>{{3, 4}}));
}

TEST(Boundary, HexagonRing) {
  // radius-1 hexagon: boundary is the six neighbours, counterclockwise
  auto in = [](SiteCoord v) { return graph_distance(v, {0, 0}) <= 1; };
  const auto t = trace_outer_boundary({0, -1}, in);
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(std::set<SiteCoord>(t.begin(), t.end()).size(), 6u);
  EXPECT_GT(signed_area(t), 0);
}

TEST(Boundary, WalkCoversOuterBoundaryOfRandomBlobs) {
  std::mt19937_64 rng(5);
  const Window w(-12, 12, -10, 10);
  for (int trial = 0; trial < 300; ++trial) {
    const auto blob = random_blob(rng, 2 + static_cast<int>(rng() % 40), 6);
    SiteMask m(w.size(), 0);
    for (const SiteCoord v : blob) m[w.index(v)] = 1;
    const SiteCoord start = *blob.begin();
    const auto t = trace_outer_boundary(w, m, start);
    // consecutive walk sites are neighbours
    for (std::size_t i = 0; i + 1 < t.size(); ++i) EXPECT_TRUE(are_neighbors(t[i], t[i + 1]));
    if (t.size() > 1) {
      EXPECT_TRUE(are_neighbors(t.back(), t.front()));
    }
    // sites met = blob sites adjacent to the unbounded complement component
    std::set<SiteCoord> outside;
    {
      oracle::Coloring col;
      for (std::size_t i = 0; i < w.size(); ++i) col[w.site(i)] = m[i] != 0;
      for (const auto& comp : oracle::components(col, false))
        if (comp.count(w.site(0))) outside = comp;
    }
    std::set<SiteCoord> want;
    for (const SiteCoord v : blob)
      for (const SiteCoord u : oracle::nbrs(v))
        if (outside.count(u)) want.insert(v);
    EXPECT_EQ(std::set<SiteCoord>(t.begin(), t.end()), want);
  }
}

TEST(Boundary, InnerAndOuter) {
  const Window w(-5, 5, -5, 5);
  SiteMask m(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) m[i] = graph_distance(w.site(i), {0, 0}) <= 2;
  const SiteMask in = inner_boundary(w, m), out = outer_boundary(w, m);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int d = graph_distance(w.site(i), {0, 0});
    EXPECT_EQ(in[i] != 0, d == 2);
    EXPECT_EQ(out[i] != 0, d == 3);
  }
}

TEST(Boundary, FillHolesMatchesComplementComponents) {
  std::mt19937_64 rng(17);
  const Window w(-6, 6, -6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    SiteMask m(w.size(), 0);
    oracle::Coloring col;
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = (rng() % 100) < 55 && !w.on_edge(i);
      col[w.site(i)] = m[i] != 0;
    }
    std::set<SiteCoord> edge_reach;
    for (const auto& comp : oracle::components(col, false)) {
      bool edge = false;
      for (const SiteCoord v : comp) edge = edge || w.on_edge(w.index(v));
      if (edge) edge_reach.insert(comp.begin(), comp.end());
    }
    const FillResult f = fill_holes(w, m);
    EXPECT_FALSE(f.touches_edge);
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_EQ(f.filled[i] != 0, !edge_reach.count(w.site(i)));
  }
}

TEST(Boundary, FillFlagsEdgeContact) {
  const Window w(0, 4, 0, 4);
  SiteMask m(w.size(), 0);
  m[0] = 1;
  EXPECT_TRUE(fill_holes(w, m).touches_edge);
}
