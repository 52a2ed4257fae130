#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "nfpp/fpp.hpp"
#include "oracles.hpp"

using namespace nfpp;

namespace {

Configuration random_config(const Window& w, double p, std::mt19937_64& rng) {
  std::vector<std::uint8_t> m(w.size());
  std::bernoulli_distribution b(p);
  for (auto& x : m) x = b(rng);
  return Configuration::from_colors(w, m, p);
}

std::set<SiteCoord> random_subset(const Window& w, std::size_t k, std::mt19937_64& rng) {
  std::set<SiteCoord> s;
  while (s.size() < k) s.insert(w.site(rng() % w.size()));
  return s;
}

// segment test written from scratch: solve p + s(q - p) = a + t(b - a)
bool seg_cross(oracle::Pt p, oracle::Pt q, oracle::Pt a, oracle::Pt b) {
  const double rx = q.x - p.x, ry = q.y - p.y, sx = b.x - a.x, sy = b.y - a.y;
  const double den = rx * sy - ry * sx;
  const double qx = a.x - p.x, qy = a.y - p.y;
  if (std::abs(den) < 1e-12) {
    if (std::abs(qx * ry - qy * rx) > 1e-9) return false;
    const double rr = rx * rx + ry * ry;
    const double t0 = (qx * rx + qy * ry) / rr, t1 = ((b.x - p.x) * rx + (b.y - p.y) * ry) / rr;
    return std::max(t0, t1) >= -1e-9 && std::min(t0, t1) <= 1 + 1e-9;
  }
  const double s = (qx * sy - qy * sx) / den, t = (qx * ry - qy * rx) / den;
  return s >= -1e-9 && s <= 1 + 1e-9 && t >= -1e-9 && t <= 1 + 1e-9;
}

// Crossing time of a box by relaxation over explicit paths (v0, ..., vk):
// states are (last site, whether it is v0) with the interior constraint on v1..v_{k-1}.
int crossing_oracle(const oracle::Coloring& col, const std::set<SiteCoord>& inside, oracle::Pt a0, oracle::Pt a1,
                    oracle::Pt b0, oracle::Pt b1) {
  const int INF = 1 << 29;
  auto t = [&](SiteCoord v) { return col.at(v) ? 0 : 1; };
  int best = INF;
  std::map<SiteCoord, int> d;
  for (const SiteCoord v : inside) d[v] = INF;
  for (const auto& [v0, b] : col)
    for (const SiteCoord v1 : oracle::nbrs(v0)) {
      if (!col.count(v1) || !seg_cross(oracle::centre(v0), oracle::centre(v1), a0, a1)) continue;
      // k = 1 needs no interior
      if (seg_cross(oracle::centre(v0), oracle::centre(v1), b0, b1)) best = std::min(best, t(v0) + t(v1));
      if (inside.count(v1)) d[v1] = std::min(d[v1], t(v0) + t(v1));
    }
  for (bool changed = true; changed;) {
    changed = false;
    for (const SiteCoord v : inside)
      for (const SiteCoord u : oracle::nbrs(v))
        if (inside.count(u) && d[v] < INF && d[v] + t(u) < d[u]) {
          d[u] = d[v] + t(u);
          changed = true;
        }
  }
  for (const SiteCoord v : inside)
    for (const SiteCoord u : oracle::nbrs(v))
      if (col.count(u) && d[v] < INF && seg_cross(oracle::centre(v), oracle::centre(u), b0, b1))
        best = std::min(best, d[v] + t(u));
  return best;
}

Window axis_window(double x0, double x1, double y) { return Window::covering(AxisBox::from_bounds(x0, x1, -y, y), 2.0); }

}  // namespace

TEST(Passage, MatchesBellmanFord) {
  std::mt19937_64 rng(2);
  const Window w(0, 11, 0, 11);
  for (int t = 0; t < 400; ++t) {
    const Configuration c = random_config(w, std::uniform_real_distribution<double>(0.1, 0.9)(rng), rng);
    const oracle::Coloring col = oracle::coloring_of(c);
    const auto A = random_subset(w, 1 + rng() % 3, rng), B = random_subset(w, 1 + rng() % 3, rng);
    const std::vector<SiteCoord> av(A.begin(), A.end()), bv(B.begin(), B.end());
    const PassageResult r = passage_time(c, av, bv);
    ASSERT_TRUE(r.reached);
    EXPECT_EQ(r.time, oracle::min_passage(col, A, B));
    // with a random allowed set
    std::set<SiteCoord> allowed = random_subset(w, w.size() * 3 / 4, rng);
    allowed.insert(A.begin(), A.end());
    allowed.insert(B.begin(), B.end());
    const SiteMask am = sites_mask(w, {allowed.begin(), allowed.end()});
    const PassageResult r2 = passage_time(c, sites_mask(w, av), sites_mask(w, bv), &am, false);
    const int want = oracle::min_passage(col, A, B, &allowed);
    if (want >= (1 << 29)) {
      EXPECT_FALSE(r2.reached);
    } else {
      ASSERT_TRUE(r2.reached);
      EXPECT_EQ(r2.time, want);
    }
  }
}

TEST(Passage, GeodesicIsAValidMinimalPath) {
  std::mt19937_64 rng(9);
  const Window w(-10, 10, -10, 10);
  for (int t = 0; t < 300; ++t) {
    const Configuration c = random_config(w, 0.45, rng);
    const SiteCoord a = w.site(rng() % w.size()), b = w.site(rng() % w.size());
    const PassageResult r = passage_time(c, std::vector<SiteCoord>{a}, std::vector<SiteCoord>{b});
    ASSERT_TRUE(r.reached);
    ASSERT_FALSE(r.geodesic.empty());
    EXPECT_EQ(r.geodesic.front(), a);
    EXPECT_EQ(r.geodesic.back(), b);
    int yellow = 0;
    for (std::size_t i = 0; i < r.geodesic.size(); ++i) {
      yellow += c.weight(r.geodesic[i]);
      if (i) {
        EXPECT_TRUE(are_neighbors(r.geodesic[i - 1], r.geodesic[i]));
      }
    }
    EXPECT_EQ(yellow, r.time);
    // same geodesic on a second call
    EXPECT_EQ(passage_time(c, std::vector<SiteCoord>{a}, std::vector<SiteCoord>{b}).geodesic, r.geodesic);
  }
}

TEST(Passage, AllYellowCountsSites) {
  const Window w(-5, 8, -5, 5);
  const Configuration c = Configuration::sample(w, 0.0, 1);
  EXPECT_EQ(passage_time(c, std::vector<SiteCoord>{{0, 0}}, std::vector<SiteCoord>{{3, 0}}).time, 4);
  EXPECT_EQ(passage_time(c, std::vector<SiteCoord>{{0, 0}}, std::vector<SiteCoord>{{0, 0}}).time, 1);
  // graph distance plus one in general
  for (int y = -3; y <= 3; ++y)
    for (int x = -3; x <= 3; ++x)
      EXPECT_EQ(passage_time(c, std::vector<SiteCoord>{{0, 0}}, std::vector<SiteCoord>{{x, y}}, std::nullopt, false).time,
                graph_distance({0, 0}, {x, y}) + 1);
}

TEST(Passage, EmptyEndpointsRejected) {
  const Configuration c = Configuration::sample(Window(0, 3, 0, 3), 0.5, 1);
  EXPECT_THROW(passage_time(c, std::vector<SiteCoord>{}, std::vector<SiteCoord>{{0, 0}}), ArgumentError);
}

TEST(Axial, DegenerateP) {
  for (const int n : {1, 2, 5, 17, 40}) {
    const Window w = axis_window(-n, 2 * n, n);
    EXPECT_EQ(a0n(Configuration::sample(w, 0.0, 5), n), n + 1);
    EXPECT_EQ(a0n(Configuration::sample(w, 1.0, 5), n), 0);
    EXPECT_EQ(point_to_line(Configuration::sample(w, 0.0, 5), n), n + 1);
  }
}

TEST(Axial, WindowTooSmallRejected) {
  const Configuration c = Configuration::sample(Window(0, 10, -1, 1), 0.5, 1);
  EXPECT_THROW(a0n(c, 8), ArgumentError);
  EXPECT_THROW(a0n(c, 0), ArgumentError);
}

TEST(Axial, SubadditiveOnEveryConfiguration) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 300; ++t) {
    const int n = 4 + static_cast<int>(rng() % 30);
    const int m = 1 + static_cast<int>(rng() % (n - 1));
    const Window w = axis_window(-n, 2 * n, n);
    const Configuration c = Configuration::sample(w, std::uniform_real_distribution<double>(0.2, 0.8)(rng), rng());
    EXPECT_LE(a0n(c, n), a0n(c, m) + axial_passage(c, m, n));
  }
}

TEST(Axial, PointToLineBelowPointToPoint) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const Window w = axis_window(-n, 2 * n, n);
    const Configuration c = Configuration::sample(w, 0.4, rng());
    EXPECT_LE(point_to_line(c, n), a0n(c, n));
  }
}

TEST(Axial, MonotoneUnderCoupling) {
  std::mt19937_64 rng(16);
  const int n = 25;
  const Window w = axis_window(-n, 2 * n, n);
  for (int t = 0; t < 100; ++t) {
    const Configuration c = Configuration::sample(w, 0.3, rng());
    int prev = a0n(c, n);
    for (const double p : {0.35, 0.4, 0.45, 0.5, 0.6}) {
      const int now = a0n(c.recolor(p), n);
      EXPECT_LE(now, prev);
      prev = now;
    }
  }
}

TEST(Passage, RotationInvariant) {
  // rotating the colouring by 60 degrees rotates passage times
  std::mt19937_64 rng(17);
  const Window w(-8, 8, -8, 8);
  const Window big(-20, 20, -20, 20);
  auto rot = [](SiteCoord v) { return SiteCoord{-v.y, v.x + v.y}; };
  for (int t = 0; t < 100; ++t) {
    const Configuration c = random_config(w, 0.5, rng);
    oracle::Coloring rc;
    for (std::size_t i = 0; i < big.size(); ++i) rc[big.site(i)] = true;
    for (std::size_t i = 0; i < w.size(); ++i) rc[rot(w.site(i))] = c.blue(i);
    SiteMask allowed(big.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) allowed[big.index(rot(w.site(i)))] = 1;
    const Configuration d = oracle::to_configuration(big, rc);
    const SiteCoord a = w.site(rng() % w.size()), b = w.site(rng() % w.size());
    SiteMask A(big.size(), 0), B(big.size(), 0);
    A[big.index(rot(a))] = 1;
    B[big.index(rot(b))] = 1;
    EXPECT_EQ(passage_time(d, A, B, &allowed, false).time,
              passage_time(c, std::vector<SiteCoord>{a}, std::vector<SiteCoord>{b}, std::nullopt, false).time);
  }
}

TEST(Crossing, LineToLineMatchesOracle) {
  std::mt19937_64 rng(22);
  const Window w(-14, 14, -12, 12);
  for (int t = 0; t < 300; ++t) {
    std::uniform_real_distribution<double> u(0, 1);
    const double bw = 1 + 6 * u(rng), bh = 1 + 6 * u(rng);
    const double th = t % 3 == 0 ? 0.0 : 2 * std::numbers::pi * u(rng);
    const Point z{-2 + 4 * u(rng), -2 + 4 * u(rng)};
    const Configuration c = random_config(w, 0.5, rng);
    const RotatedBox box{z, th, bw, bh};
    std::set<SiteCoord> inside;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (contains(box, embed(w.site(i)))) inside.insert(w.site(i));
    auto P = [&](Point q) {
      const Point r = z + rotate(q, th);
      return oracle::Pt{r.x, r.y};
    };
    const int want = crossing_oracle(oracle::coloring_of(c), inside, P({0, 0}), P({0, bh}), P({bw, 0}), P({bw, bh}));
    const PassageResult got = line_to_line_result(c, bw, bh, th, z, true);
    ASSERT_TRUE(got.reached);
    EXPECT_EQ(got.time, want) << "box " << bw << "x" << bh << " theta " << th;
    // the geodesic realises the time and its ends cross the two sides
    int yellow = 0;
    for (const SiteCoord v : got.geodesic) yellow += c.weight(v);
    EXPECT_EQ(yellow, got.time);
    ASSERT_GE(got.geodesic.size(), 2u);
    const auto& g = got.geodesic;
    EXPECT_TRUE(seg_cross(oracle::centre(g[0]), oracle::centre(g[1]), P({0, 0}), P({0, bh})));
    EXPECT_TRUE(seg_cross(oracle::centre(g[g.size() - 2]), oracle::centre(g.back()), P({bw, 0}), P({bw, bh})));
  }
}

TEST(Crossing, LineToLineDegenerate) {
  const Window w(-10, 10, -10, 10);
  EXPECT_EQ(line_to_line(Configuration::sample(w, 1.0, 1), 6, 3, 0.3, {0, 0}), 0);
  // all yellow: a horizontal crossing of width 6 needs 7 sites
  EXPECT_EQ(line_to_line(Configuration::sample(w, 0.0, 1), 6, 3, 0.0, {0, 0}), 7);
  EXPECT_THROW(line_to_line(Configuration::sample(w, 0.5, 1), 0.5, 3, 0, {0, 0}), ArgumentError);
}

TEST(Crossing, SectorMonotoneInOuterRadius) {
  std::mt19937_64 rng(23);
  const Window w = Window::covering(AxisBox{{0, 0}, 20, 20}, 2);
  for (int t = 0; t < 100; ++t) {
    const Configuration c = Configuration::sample(w, 0.45, rng());
    const double th = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
    int prev = 0;
    for (const double r2 : {6.0, 9.0, 12.0, 16.0, 19.0}) {
      const PassageResult r = sector_crossing(c, {0, 0}, th, 3.0, r2);
      ASSERT_TRUE(r.reached);
      EXPECT_GE(r.time, prev);
      prev = r.time;
    }
    EXPECT_THROW(sector_crossing(c, {0, 0}, th, 3.0, 3.0), ArgumentError);
  }
}

TEST(ClusterPassageTest, DegenerateP) {
  const Window w = Window::covering(AxisBox{{5, 0}, 10, 6}, 2);
  const ClusterPassage one = cluster_passage(Configuration::sample(w, 1.0, 1), 0, 8, 0, 1.0);
  EXPECT_TRUE(one.from.fallback);
  EXPECT_EQ(one.result.time, 0);
  const ClusterPassage zero = cluster_passage(Configuration::sample(w, 0.0, 1), 0, 8, 0, 1.0);
  EXPECT_EQ(zero.result.time, 9);
}

TEST(ClusterPassageTest, StripMonotoneInHeight) {
  std::mt19937_64 rng(24);
  const Window w = Window::covering(AxisBox{{10, 0}, 14, 10}, 2);
  for (int t = 0; t < 100; ++t) {
    const Configuration c = Configuration::sample(w, 0.45, rng());
    int prev = 1 << 29;
    for (const double h : {1.0, 2.0, 4.0, 8.0}) {
      const ClusterPassage s = strip_passage(c, 0, 20, 0, h, 1.0, 1.5);
      if (!s.result.reached) continue;
      EXPECT_LE(s.result.time, prev);
      prev = s.result.time;
    }
    // widening the strip to the whole window recovers the free passage time
    const ClusterPassage free = cluster_passage(c, 0, 20, 0, 1.0, 1.5);
    EXPECT_LE(free.result.time, prev);
  }
}
