#include <gtest/gtest.h>

#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/oracle.hpp"
#include "test_support.hpp"

using namespace msmmean;

TEST(EnumerationSize, GeometricSum) {
  EXPECT_EQ(oracle::enumeration_size(2, 3), 14.0);
  EXPECT_EQ(oracle::enumeration_size(1, 5), 5.0);
  EXPECT_EQ(oracle::enumeration_size(4, 1), 4.0);
}

TEST(BruteForce, TwoPairOptimum) {
  const ProblemInstance inst({TimeSeries({0, 0}), TimeSeries({0, 2})}, 0.5);
  const auto r = oracle::brute_force_mean(inst, 3);
  EXPECT_DOUBLE_EQ(r.cost, 2.0);
  EXPECT_EQ(r.candidates, 14.0);
  EXPECT_NEAR(sum_distance(inst, r.mean), r.cost, 1e-12);
}

TEST(BruteForce, SingleSeriesIsItsOwnMean) {
  const ProblemInstance inst({TimeSeries({3, 1, 2})}, 0.3);
  const auto r = oracle::brute_force_mean(inst, 3);
  EXPECT_EQ(r.cost, 0.0);
  EXPECT_EQ(r.mean, TimeSeries({3, 1, 2}));
}

TEST(BruteForce, PrefersShorterOnTies) {
  // With c = 0 every constant series over {5} is at distance 0.
  const ProblemInstance inst({TimeSeries({5, 5}), TimeSeries({5})}, 0.0);
  const auto r = oracle::brute_force_mean(inst, 3);
  EXPECT_EQ(r.mean, TimeSeries({5}));
}

TEST(BruteForce, WorkersDoNotChangeTheAnswer) {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto grid = test_support::random_grid(rng, 3);
    const auto inst = test_support::random_instance(rng, 2, 3, grid, 0.1);
    const auto a = oracle::brute_force_mean(inst, 4, {}, 1);
    const auto b = oracle::brute_force_mean(inst, 4, {}, 3);
    EXPECT_EQ(a.cost, b.cost);
    EXPECT_EQ(a.mean, b.mean);
  }
}

TEST(BruteForce, RefusesOversizedInstances) {
  const ProblemInstance many({TimeSeries({1}), TimeSeries({2}), TimeSeries({3}), TimeSeries({4})}, 0.1);
  EXPECT_THROW(oracle::brute_force_mean(many, 2), BudgetError);
  const ProblemInstance wide({TimeSeries({1, 2, 3, 4, 5})}, 0.1);
  EXPECT_THROW(oracle::brute_force_mean(wide, 2), BudgetError);
  oracle::OracleBudget tiny;
  tiny.max_candidates = 10;
  const ProblemInstance small({TimeSeries({1, 2})}, 0.1);
  EXPECT_THROW(oracle::brute_force_mean(small, 3, tiny), BudgetError);
}

TEST(MetricAxioms, ReportIsDeterministic) {
  const std::vector<double> grid{0, 1, 2, 3};
  const auto a = oracle::check_metric_axioms(100, 6, grid, 0.1, 5);
  const auto b = oracle::check_metric_axioms(100, 6, grid, 0.1, 5);
  EXPECT_EQ(a.samples, 100u);
  EXPECT_EQ(a.total_violations(), b.total_violations());
  EXPECT_TRUE(a.passed());
}
