#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "kbrg/errors.hpp"
#include "kbrg/rng.hpp"
#include "kbrg/spectra.hpp"
#include "oracles.hpp"

using namespace kbrg;

namespace {

std::vector<double> random_points(std::uint64_t seed, std::size_t n, double shift) {
  CounterRng rng(seed);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.normal(i) + shift;
  return v;
}

}  // namespace

TEST(Eigen, DiagonalAndTwoByTwo) {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const auto ev = symmetric_eigenvalues(m);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], 3.0, 1e-14);
  m(0, 1) = m(1, 0) = std::nan("");
  EXPECT_THROW(symmetric_eigenvalues(m), DataError);
}

TEST(Distances, PointMassesAtUnitDistance) {
  const EmpiricalMeasure d0({0.0}), d1({1.0});
  EXPECT_NEAR(levy_distance(d0, d1), 1.0, 1e-12);
  EXPECT_NEAR(ks_distance(d0, d1), 1.0, 1e-12);
  EXPECT_NEAR(levy_distance(d0, d0), 0.0, 1e-12);
}

TEST(Distances, SmallShiftGivesShiftLevy) {
  const EmpiricalMeasure a({0.0}), b({0.3});
  EXPECT_NEAR(levy_distance(a, b), 0.3, 1e-12);
}

TEST(Distances, AgreeWithBruteForce) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto a = random_points(seed, 40, 0.0);
    const auto b = random_points(seed + 100, 30, 0.2 * static_cast<double>(seed));
    const EmpiricalMeasure ma(a), mb(b);
    EXPECT_NEAR(levy_distance(ma, mb), oracle::levy_bruteforce(a, b), 1.01e-4) << "seed " << seed;
    EXPECT_NEAR(levy_distance(ma, mb), levy_distance(mb, ma), 1e-9);
    EXPECT_NEAR(ks_distance(ma, mb), oracle::ks_bruteforce(a, b), 1e-14);
  }
}

TEST(Measure, CdfAndLeftLimit) {
  const EmpiricalMeasure m({3.0, 1.0, 2.0, 2.0});
  EXPECT_DOUBLE_EQ(m.cdf(2.0), 0.75);
  EXPECT_DOUBLE_EQ(m.cdf_left(2.0), 0.25);
  EXPECT_DOUBLE_EQ(m.cdf(0.0), 0.0);
  EXPECT_DOUBLE_EQ(m.cdf(3.0), 1.0);
}

TEST(Moments, EmpiricalMoment) {
  const std::vector<double> v = {-2.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(empirical_moment(v, 2), 2.0);
  EXPECT_DOUBLE_EQ(empirical_moment(v, 4), 6.0);
  EXPECT_THROW(empirical_moment(v, 3), ParameterError);
}

TEST(Tail, RecoversSyntheticPowerLaw) {
  const auto grid = log_grid(1.5, 40.0, 30);
  std::vector<SurvivalPoint> table;
  for (double x : grid) table.push_back({x, std::exp(-1.25) * std::pow(x, -6.0)});
  const auto fit = tail_fit(table, 1.5);
  EXPECT_NEAR(fit.slope, -6.0, 1e-10);
  EXPECT_NEAR(fit.intercept, -1.25, 1e-10);
  EXPECT_EQ(fit.points, 30u);
  EXPECT_THROW(tail_fit(std::span(table).first(5), 1.5), DataError);
}

TEST(Tail, SurvivalIsStrictExceedance) {
  const EmpiricalMeasure m({1.0, 2.0, 2.0, 4.0});
  const std::vector<double> grid = {0.0, 2.0, 4.0};
  const auto s = survival_function(m, grid);
  EXPECT_DOUBLE_EQ(s[0].survival, 1.0);
  EXPECT_DOUBLE_EQ(s[1].survival, 0.25);
  EXPECT_DOUBLE_EQ(s[2].survival, 0.0);
}

TEST(Histogram, CountsEverything) {
  const auto v = random_points(7, 1000, 0.0);
  const auto edges = freedman_diaconis_edges(v);
  const auto h = histogram(v, edges);
  EXPECT_EQ(h.total, 1000u);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}), 1000u);
  EXPECT_EQ(h.counts.size() + 1, h.edges.size());
}

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> s = {0.0, 1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(quantile(s, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(quantile(s, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile(s, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(quantile(s, 0.125), 0.5);
}

TEST(Standardize, ZeroMeanUnitSecondMoment) {
  const auto z = standardize(random_points(3, 500, 4.0));
  EXPECT_NEAR(std::accumulate(z.begin(), z.end(), 0.0) / 500.0, 0.0, 1e-12);
  EXPECT_NEAR(empirical_moment(z, 2), 1.0, 1e-12);
}
