#include <gtest/gtest.h>

#include <vector>

#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/oracle.hpp"
#include "test_support.hpp"

using namespace msmmean;

TEST(SplitMergeCost, BetweenNeighborAndTargetCostsOnlyC) {
  EXPECT_DOUBLE_EQ(split_merge_cost(2, 1, 3, 0.1), 0.1);
  EXPECT_DOUBLE_EQ(split_merge_cost(2, 3, 1, 0.1), 0.1);
  EXPECT_DOUBLE_EQ(split_merge_cost(1, 1, 1, 0.7), 0.7);
}

TEST(SplitMergeCost, OutsideAddsSmallerDetour) {
  EXPECT_DOUBLE_EQ(split_merge_cost(5, 1, 3, 0.1), 2.1);
  EXPECT_DOUBLE_EQ(split_merge_cost(-1, 1, 3, 0.0), 2.0);
}

TEST(MsmDistance, GoldenTransformationExample) {
  const std::vector<double> x{4, 5, 5, 10};
  const std::vector<double> y{10, 7, 8};
  EXPECT_NEAR(msm_distance(x, y, 0.1), 8.3, 1e-9);
  EXPECT_NEAR(msm_distance(y, x, 0.1), 8.3, 1e-9);
}

TEST(MsmDistance, HandTracedMerge) {
  // D[1,1] = 0, D[2,1] = 0 + C(2, 1, 1) = 0.5 + min(1, 1).
  EXPECT_DOUBLE_EQ(msm_distance(std::vector<double>{1, 2}, std::vector<double>{1}, 0.5), 1.5);
}

TEST(MsmDistance, IdenticalSeriesAreAtZero) {
  const std::vector<double> x{0.3, -1.2, 4.0, 4.0, 2.5};
  for (double c : {0.0, 0.1, 1.0, 7.0}) EXPECT_EQ(msm_distance(x, x, c), 0.0);
  EXPECT_EQ(msm_distance(TimeSeries({5}), TimeSeries({5}), 1.0), 0.0);
}

TEST(MsmDistance, NeverAbovePureMoveAlignmentForEqualLengths) {
  Rng rng(7);
  const std::vector<double> grid{-2, -1, 0, 0.5, 1, 3};
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<double> x(n), y(n);
    double moves = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = grid[rng.below(grid.size())];
      y[i] = grid[rng.below(grid.size())];
      moves += std::abs(x[i] - y[i]);
    }
    EXPECT_LE(msm_distance(x, y, 0.3), moves + 1e-12);
  }
}

TEST(MsmDistance, UnequalLengthsAreSymmetric) {
  Rng rng(11);
  const std::vector<double> grid{0, 1, 2, 3};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> x(1 + rng.below(9)), y(1 + rng.below(9));
    for (auto& v : x) v = grid[rng.below(4)];
    for (auto& v : y) v = grid[rng.below(4)];
    for (double c : {0.0, 0.01, 0.5, 2.0}) {
      const double d = msm_distance(x, y, c);
      EXPECT_GE(d, 0.0);
      EXPECT_NEAR(d, msm_distance(y, x, c), 1e-9);
    }
  }
}

TEST(MsmDistance, MetricAxiomsHoldOnSampledTriples) {
  const std::vector<double> grid{0, 1, 2, 3};
  const auto report = oracle::check_metric_axioms(1000, 10, grid, 0.5, 42);
  EXPECT_EQ(report.samples, 1000u);
  EXPECT_TRUE(report.passed()) << report.total_violations() << " violations";
  EXPECT_FALSE(report.counterexample.has_value());
}

TEST(MsmDistance, DegenerateGridStillMetric) {
  const std::vector<double> grid{0};
  const auto report = oracle::check_metric_axioms(200, 6, grid, 0.2, 3);
  EXPECT_TRUE(report.passed());
}

TEST(SumDistance, AddsPairwiseDistances) {
  const ProblemInstance single({TimeSeries({4, 5, 5, 10})}, 0.1);
  EXPECT_NEAR(sum_distance(single, TimeSeries({10, 7, 8})), 8.3, 1e-9);

  const ProblemInstance two({TimeSeries({1}), TimeSeries({3})}, 0.25);
  EXPECT_DOUBLE_EQ(sum_distance(two, TimeSeries({1})), 2.0);

  const TimeSeries x({1, 2, 3});
  EXPECT_EQ(sum_distance(ProblemInstance({x}, 1.0), x), 0.0);
}
