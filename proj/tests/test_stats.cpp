#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "weil/stats.hpp"

using namespace weil::stats;

namespace {

constexpr double kPi = std::numbers::pi;

// Quantile of |2 cos theta| by bisection on the CDF.
double quantile(double u) {
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (su2_abs_trace_cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Su2Law, CdfEndpointsAndMonotone) {
  EXPECT_EQ(su2_abs_trace_cdf(-1.0), 0.0);
  EXPECT_EQ(su2_abs_trace_cdf(0.0), 0.0);
  EXPECT_EQ(su2_abs_trace_cdf(2.0), 1.0);
  EXPECT_NEAR(su2_abs_trace_cdf(2.0 - 1e-12), 1.0, 1e-6);
  double prev = 0.0;
  for (double s = 0.01; s < 2.0; s += 0.01) {
    EXPECT_GE(su2_abs_trace_cdf(s), prev);
    prev = su2_abs_trace_cdf(s);
  }
}

TEST(Su2Law, CdfAgainstDirectIntegration) {
  // P(|2 cos theta| <= s) integrates (2/pi) sin^2 over the theta-set where
  // |cos theta| <= s/2; evaluated by a fine midpoint rule.
  for (double s : {0.1, 0.5, 1.0, 1.5, 1.9}) {
    const int n = 400000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = (i + 0.5) * kPi / n;
      if (std::abs(2.0 * std::cos(t)) <= s) acc += 2.0 / kPi * std::sin(t) * std::sin(t);
    }
    EXPECT_NEAR(su2_abs_trace_cdf(s), acc * kPi / n, 1e-5) << s;
  }
}

TEST(Su2Law, MomentsMatchClosedForms) {
  EXPECT_NEAR(su2_abs_trace_moment(1), 8.0 / (3.0 * kPi), 1e-10);
  EXPECT_NEAR(su2_abs_trace_moment(2), 1.0, 1e-10);
  EXPECT_NEAR(su2_abs_trace_moment(3), 64.0 / (15.0 * kPi), 1e-10);
  EXPECT_NEAR(su2_abs_trace_moment(4), 2.0, 1e-10);
  // Odd interval counts are rounded up, not rejected.
  EXPECT_NEAR(su2_abs_trace_moment(2, 1001), 1.0, 1e-8);
}

TEST(KsDistance, ExactQuantilesAreClose) {
  const int n = 2000;
  std::vector<double> s;
  for (int i = 0; i < n; ++i) s.push_back(quantile((i + 0.5) / n));
  EXPECT_LE(ks_distance(s, su2_abs_trace_cdf), 0.5 / n + 1e-9);
}

TEST(KsDistance, DetectsWrongLaw) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> s(5000);
  for (auto& x : s) x = u(rng);
  // Uniform on [0,2] against the |trace| law: sup gap is about 0.1.
  EXPECT_GT(ks_distance(s, su2_abs_trace_cdf), 0.05);
  EXPECT_EQ(ks_distance({}, su2_abs_trace_cdf), 0.0);
}

TEST(KsDistance, SingleSampleByHand) {
  // One point at s: D = max(1 - F(s), F(s)).
  const double f = su2_abs_trace_cdf(1.0);
  EXPECT_NEAR(ks_distance({1.0}, su2_abs_trace_cdf), std::max(f, 1.0 - f), 1e-15);
}

TEST(RawMoments, SmallSample) {
  const std::vector<double> s{1.0, -2.0, 0.0};
  const auto m = raw_moments(s);
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  EXPECT_DOUBLE_EQ(m[1], 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(m[2], 3.0);
  EXPECT_DOUBLE_EQ(m[3], 17.0 / 3.0);
  EXPECT_THROW(raw_moments(std::vector<double>{}), std::invalid_argument);
}

TEST(Histogram, BinsAndClamping) {
  const std::vector<double> s{-0.5, 0.0, 0.49, 0.5, 1.99, 2.0, 7.0};
  const auto h = histogram(s, 0.0, 2.0, 4);
  EXPECT_EQ(h.counts, (std::vector<std::int64_t>{3, 1, 0, 3}));
  EXPECT_EQ(h.total(), 7);
  EXPECT_THROW(histogram(s, 0.0, 2.0, 0), std::invalid_argument);
  EXPECT_THROW(histogram(s, 1.0, 1.0, 3), std::invalid_argument);
}
