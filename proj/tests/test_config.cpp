#include <gtest/gtest.h>

#include <sstream>

#include "nfpp/config.hpp"
#include "nfpp/errors.hpp"
#include "nfpp/parallel.hpp"

using namespace nfpp;

TEST(Config, DegenerateP) {
  const Window w(-5, 5, -5, 5);
  const Configuration c0 = Configuration::sample(w, 0.0, 3);
  const Configuration c1 = Configuration::sample(w, 1.0, 3);
  EXPECT_EQ(c0.count_blue(), 0u);
  EXPECT_EQ(c1.count_blue(), w.size());
}

TEST(Config, RejectsBadP) {
  const Window w(0, 2, 0, 2);
  EXPECT_THROW(Configuration::sample(w, -0.1, 1), ArgumentError);
  EXPECT_THROW(Configuration::sample(w, 1.5, 1), ArgumentError);
}

TEST(Config, BlueFractionAtHalf) {
  const Window w(0, 999, 0, 999);  // 10^6 sites
  const Configuration c = Configuration::sample(w, 0.5, 20240601);
  const double f = static_cast<double>(c.count_blue()) / static_cast<double>(w.size());
  EXPECT_NEAR(f, 0.5, 0.002);
}

TEST(Config, ColorMatchesUniform) {
  const Window w(-6, 6, -6, 6);
  const Configuration c = Configuration::sample(w, 0.37, 99);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double u = c.uniform(w.site(i));
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(c.blue(i), u <= 0.37);
    EXPECT_EQ(c.weight(i), c.blue(i) ? 0 : 1);
  }
}

TEST(Config, UniformsIndependentOfWindow) {
  // the same site gets the same colour in overlapping windows
  const Configuration a = Configuration::sample(Window(-10, 10, -10, 10), 0.5, 42);
  const Configuration b = Configuration::sample(Window(-3, 20, 0, 15), 0.5, 42);
  for (int y = 0; y <= 10; ++y)
    for (int x = -3; x <= 5; ++x) EXPECT_EQ(a.blue(SiteCoord{x, y}), b.blue(SiteCoord{x, y}));
}

TEST(Config, RecolorIdentityAndIdempotence) {
  const Window w(0, 20, 0, 20);
  const Configuration c = Configuration::sample(w, 0.45, 7);
  EXPECT_EQ(c.recolor(0.45), c);
  EXPECT_EQ(c.recolor(0.2).recolor(0.7), c.recolor(0.7));
}

TEST(Config, RecolorMonotoneExhaustive) {
  const Window w(0, 99, 0, 99);  // 10^4 sites
  const Configuration c = Configuration::sample(w, 0.5, 123);
  const Configuration lo = c.recolor(0.3), hi = c.recolor(0.4);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (lo.blue(i)) {
      EXPECT_TRUE(hi.blue(i));
    }
}

TEST(Config, RecolorNeedsUniforms) {
  const Window w(0, 2, 0, 2);
  const Configuration c = Configuration::from_colors(w, std::vector<std::uint8_t>(w.size(), 1));
  EXPECT_THROW(c.recolor(0.3), ArgumentError);
}

TEST(Config, DeterministicAcrossThreads) {
  const Window w(0, 63, 0, 63);
  const auto one = parallel_map<std::vector<std::uint64_t>>(
      16, 1, [&](std::size_t t) { return Configuration::sample(w, 0.5, derive_seed(9, 1, t)).bits(); });
  const auto four = parallel_map<std::vector<std::uint64_t>>(
      16, 4, [&](std::size_t t) { return Configuration::sample(w, 0.5, derive_seed(9, 1, t)).bits(); });
  EXPECT_EQ(one, four);
}

TEST(Config, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 1, 0));
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(2, 0, 0));
  EXPECT_EQ(derive_seed(5, 6, 7), derive_seed(5, 6, 7));
}

TEST(Config, DumpLoadRoundTrip) {
  const Window w(-7, 12, -3, 9);
  const Configuration c = Configuration::sample(w, 0.61, 0xdeadbeef);
  std::stringstream ss;
  c.dump(ss);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 8), "NFPPCFG1");
  EXPECT_EQ(bytes.size(), 8 + 16 + 8 + 8 + 8 * ((w.size() + 63) / 64));
  std::stringstream in(bytes);
  const Configuration d = Configuration::load(in);
  EXPECT_EQ(c, d);
  EXPECT_EQ(d.p(), 0.61);
  EXPECT_EQ(d.seed(), 0xdeadbeefULL);
  std::stringstream bad("NOTMAGIC");
  EXPECT_THROW(Configuration::load(bad), ArgumentError);
}
