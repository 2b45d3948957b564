#include <gtest/gtest.h>

#include "msm_mean/errors.hpp"
#include "msm_mean/verify.hpp"

using namespace msmmean;

TEST(Verify, DefaultSuitePasses) {
  const auto report = run_verify({});
  ASSERT_EQ(report.checks.size(), 5u);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.passed) << c.name << ": " << (c.counterexamples.empty() ? "" : c.counterexamples[0]);
    EXPECT_GT(c.cases, 0u) << c.name;
  }
  EXPECT_TRUE(report.passed());
}

TEST(Verify, SingleSeriesBudgetIsTrivial) {
  VerifyConfig config;
  config.min_k = config.max_k = 1;
  config.instances = 20;
  config.metric_samples = 50;
  EXPECT_TRUE(run_verify(config).passed());
  for (const auto& inst : verification_instances(config)) EXPECT_EQ(inst.k(), 1u);
}

TEST(Verify, NegativeCostIsRejected) {
  VerifyConfig config;
  config.cs = {0.1, -0.5};
  EXPECT_THROW(run_verify(config), ConfigError);
}

TEST(Verify, InstanceSetRespectsTheBudget) {
  const VerifyConfig config;
  const auto instances = verification_instances(config);
  ASSERT_EQ(instances.size(), 50u);
  for (const auto& inst : instances) {
    EXPECT_GE(inst.k(), 2u);
    EXPECT_LE(inst.k(), 3u);
    EXPECT_LE(inst.max_length(), 4u);
    EXPECT_LE(build_value_set(inst).size(), 4u);
  }
  const auto again = verification_instances(config);
  for (std::size_t i = 0; i < instances.size(); ++i) EXPECT_EQ(again[i][0], instances[i][0]);
}
