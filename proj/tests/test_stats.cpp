#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nfpp/errors.hpp"
#include "nfpp/parallel.hpp"
#include "nfpp/stats.hpp"

using namespace nfpp;

TEST(Stats, EstimateMatchesTwoPassFormula) {
  const std::vector<double> xs{1, 4, 4, 7, 2.5, 9, 0};
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  const MCEstimate e = estimate_from(xs);
  EXPECT_NEAR(e.mean, mean, 1e-12);
  EXPECT_NEAR(e.std_err, std::sqrt(ss / (n - 1)) / std::sqrt(n), 1e-12);
  EXPECT_EQ(e.n, xs.size());
}

TEST(Stats, SingleSampleAndEmpty) {
  EXPECT_EQ(estimate_from(std::vector<double>{3.0}).std_err, 0.0);
  EXPECT_THROW(estimate_from(std::vector<double>{}), ArgumentError);
}

TEST(Stats, Proportion) {
  const MCEstimate e = proportion(30, 100);
  EXPECT_NEAR(e.mean, 0.3, 1e-15);
  EXPECT_NEAR(e.std_err, std::sqrt(0.3 * 0.7 * 100.0 / 99.0 / 100.0), 1e-12);
}

TEST(Stats, Quantiles) {
  const std::vector<double> xs{5, 1, 3, 2, 4};
  EXPECT_DOUBLE_EQ(quantile(xs, 0.0), 1);
  EXPECT_DOUBLE_EQ(quantile(xs, 0.5), 3);
  EXPECT_DOUBLE_EQ(quantile(xs, 1.0), 5);
  EXPECT_DOUBLE_EQ(quantile(xs, 0.125), 1.5);
  const Interval iv = percentile_interval(xs, 0.5);
  EXPECT_DOUBLE_EQ(iv.lo, 2);
  EXPECT_DOUBLE_EQ(iv.hi, 4);
}

TEST(Stats, LinearFitExactLine) {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LinearFit f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, 2, 1e-12);
  EXPECT_NEAR(f.intercept, 1, 1e-12);
  EXPECT_THROW(linear_fit(std::vector<double>{1, 1}, std::vector<double>{2, 3}), ArgumentError);
}

TEST(Parallel, OrderedResultsAndErrors) {
  const auto v = parallel_map<int>(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
  // the smallest failing index wins regardless of scheduling
  try {
    parallel_for(50, 4, [](std::size_t i) {
      if (i == 7 || i == 31) throw std::runtime_error("fail " + std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "fail 7");
  }
}
