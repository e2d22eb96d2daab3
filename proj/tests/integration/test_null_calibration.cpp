#include <cmath>

#include <gtest/gtest.h>

#include "ktgraph/changepoint.hpp"

using namespace ktg;

namespace {

ChangePointSpec null_spec() {
  ChangePointSpec s;
  s.n = 500;
  s.m = 50;
  s.p = 0.2;
  s.signal_eps = 0.0;
  return s;
}

}  // namespace

// Under the null both graphs are ER(n, p), so the normalized edge-count
// difference is close to standard normal.
TEST(NullCalibration, EdgeCountDifferenceIsStandardized) {
  const std::size_t R = 2000;
  const PowerReport r = changepoint_power(null_spec(), Statistic::T2, ThresholdRule{}, R, 2718);
  EXPECT_GE(r.null_variance, 0.8);
  EXPECT_LE(r.null_variance, 1.25);
  EXPECT_NEAR(r.null_mean, 0.0, 3 * std::sqrt(r.null_variance / R));
  EXPECT_NEAR(r.alt_mean, 0.0, 3 * std::sqrt(r.alt_variance / R));
  EXPECT_NEAR(r.null_rejection_rate, 0.05, 3 * std::sqrt(0.05 * 0.95 / R));
}

TEST(NullCalibration, TriangleDifferenceCentered) {
  const std::size_t R = 600;
  const PowerReport r = changepoint_power(null_spec(), Statistic::T3, ThresholdRule{}, R, 31);
  EXPECT_NEAR(r.null_mean, 0.0, 3 * std::sqrt(r.null_variance / R));
  // The n^2 p^2 sqrt(p p_eps) scale leaves a null variance near (1 - p) / p rather than 1.
  EXPECT_NEAR(r.null_variance / ((1 - 0.2) / 0.2), 1.0, 0.3);
}

TEST(NullCalibration, EmpiricalThresholdHoldsLevel) {
  ThresholdRule rule;
  rule.kind = ThresholdRule::Kind::empirical_null;
  rule.calibration_replicates = 1000;
  ChangePointSpec s = null_spec();
  s.n = 200;
  const std::size_t R = 1000;
  const PowerReport r = changepoint_power(s, Statistic::max_degree, rule, R, 5);
  // Ties at the threshold only make the discrete statistic more conservative.
  EXPECT_LE(r.null_rejection_rate, 0.05 + 4 * std::sqrt(0.05 * 0.95 / R));
  EXPECT_GT(r.null_rejection_rate, 0.0);
}
