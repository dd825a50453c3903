#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kbrg/errors.hpp"
#include "kbrg/moments.hpp"
#include "oracles.hpp"

using namespace kbrg;

namespace {

ModelParams params(double tau, double sigma, double m = kUntruncated) {
  ModelParams p;
  p.tau = tau;
  p.sigma = sigma;
  p.trunc_m = m;
  return p;
}

// E[kappa(W1, W2)] for the hard-truncated law; the atom at 0 contributes nothing.
double hard_second_moment(double tau, double sigma, double m) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto f = [tau](double x) { return (tau - 1) * std::pow(x, -tau); };
  auto outer = [&](double y) {
    auto inner = [&](double x) { return x * f(x); };
    return 2.0 * std::pow(y, sigma) * f(y) * GK::integrate(inner, y, m, 15, 1e-13);
  };
  return GK::integrate(outer, 1.0, m, 15, 1e-12);
}

}  // namespace

TEST(Moments, SecondMomentClosedFormMatchesDoubleIntegral) {
  for (auto [tau, sigma] : {std::pair{4.0, 1.0}, {3.5, 0.5}, {5.0, 2.0}, {6.0, 1.5}}) {
    const double ref = oracle::second_moment_2d(tau, sigma);
    EXPECT_NEAR(second_moment_closed_form(tau, sigma), ref, 1e-8 * ref);
  }
  EXPECT_DOUBLE_EQ(second_moment_closed_form(4.0, 1.0), 2.25);
}

TEST(Moments, TreeQuadratureSecondMoment) {
  for (auto [tau, sigma] : {std::pair{4.0, 1.0}, {3.5, 0.5}, {5.0, 2.0}, {6.0, 1.5}}) {
    const double ref = oracle::second_moment_2d(tau, sigma);
    EXPECT_NEAR(limiting_moment_value(1, params(tau, sigma), LawVariant::Untruncated, MomentMethod::TreeQuadrature),
                ref, 1e-8 * ref)
        << "tau " << tau << " sigma " << sigma;
  }
}

TEST(Moments, HardTruncatedSecondMoment) {
  double previous = 0.0;
  for (double m : {5.0, 20.0, 100.0}) {
    const double ref = hard_second_moment(4.0, 1.0, m);
    const double got = limiting_moment_value(1, params(4.0, 1.0, m), LawVariant::HardTruncated,
                                             MomentMethod::TreeQuadrature);
    EXPECT_NEAR(got, ref, 1e-9 * ref);
    EXPECT_GT(got, previous);
    previous = got;
  }
  EXPECT_LT(previous, 2.25);
}

TEST(Moments, DegenerateWeightsGiveCatalan) {
  for (int k = 1; k <= 6; ++k)
    for (auto method : {MomentMethod::ClosedFormSigma1, MomentMethod::TreeQuadrature})
      EXPECT_NEAR(limiting_moment_value(k, params(4.0, 1.0), LawVariant::Degenerate, method),
                  static_cast<double>(oracle::catalan(k)), 1e-12);
}

TEST(Moments, BlockSizeFormulaAgreesWithTreeQuadrature) {
  const auto p = params(6.0, 1.0);
  for (int k = 1; k <= 4; ++k) {
    const double a = limiting_moment_value(k, p, LawVariant::Untruncated, MomentMethod::ClosedFormSigma1);
    const double b = limiting_moment_value(k, p, LawVariant::Untruncated, MomentMethod::TreeQuadrature);
    EXPECT_NEAR(a, b, 1e-7 * a) << "k " << k;
  }
  EXPECT_THROW(limiting_moment_value(2, params(6.0, 1.5), LawVariant::Untruncated, MomentMethod::ClosedFormSigma1),
               ParameterError);
}

TEST(Moments, MonteCarloAgreesWithTreeQuadrature) {
  const auto p = params(4.0, 0.7, 20.0);
  MomentOptions o;
  o.mc_trials = 200000;
  for (int k = 1; k <= 3; ++k) {
    const auto mc = limiting_moment(k, p, LawVariant::Conditional, MomentMethod::MonteCarlo, o);
    const double tree = limiting_moment_value(k, p, LawVariant::Conditional, MomentMethod::TreeQuadrature);
    EXPECT_GT(mc.std_error, 0.0);
    EXPECT_LT(std::abs(mc.value - tree), 4.0 * mc.std_error) << "k " << k;
  }
  EXPECT_THROW(moment_oracle_monte_carlo(1, p, LawVariant::Conditional, 100, 1), ParameterError);
}

TEST(Moments, TruncatedMomentsRespectBound) {
  const auto p = params(3.5, 1.0, 8.0);
  for (int k = 1; k <= 4; ++k)
    EXPECT_LE(limiting_moment_value(k, p, LawVariant::HardTruncated, MomentMethod::TreeQuadrature),
              truncated_moment_bound(k, 8.0, 1.0));
}

TEST(Moments, DivergentMomentIsRefused) {
  EXPECT_THROW(check_moment_finite(3, params(4.0, 1.0), LawVariant::Untruncated), DomainError);
  EXPECT_THROW(limiting_moment_value(3, params(4.0, 1.0), LawVariant::Untruncated, MomentMethod::TreeQuadrature),
               DomainError);
  EXPECT_NO_THROW(check_moment_finite(3, params(4.0, 1.0, 10.0), LawVariant::HardTruncated));
}

TEST(Moments, MethodNamesRoundTrip) {
  for (auto m : {MomentMethod::ClosedFormSigma1, MomentMethod::TreeQuadrature, MomentMethod::MonteCarlo})
    EXPECT_EQ(parse_moment_method(to_string(m)), m);
}

TEST(Moments, RootMessagesFactorizeOverDisjointIntervals) {
  const double tau = 4.0, sigma = 0.5, m = 30.0;
  const auto p = params(tau, sigma, m);
  const auto grid = moment_grid(3, p, LawVariant::Conditional);
  const auto single = root_message(walk_tree(make_pair_partition(1, {{1, 2}})), grid, p);
  const auto two = root_message(walk_tree(make_pair_partition(2, {{1, 2}, {3, 4}})), grid, p);
  const auto three = root_message(walk_tree(make_pair_partition(3, {{1, 2}, {3, 4}, {5, 6}})), grid, p);
  const auto nested = root_message(walk_tree(make_pair_partition(2, {{1, 4}, {2, 3}})), grid, p);

  // nesting: H(x) = int kappa(x, y) H_1(y) mu(dy) with H_1(y) = E kappa(y, W)
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double cm = 1.0 - std::pow(m, -(tau - 1));
  auto f = [&](double x) { return (tau - 1) * std::pow(x, -tau) / cm; };
  auto split = [&](double x, auto&& g) {
    auto h = [&](double y) { return kernel_value(p, x, y) * g(y) * f(y); };
    return GK::integrate(h, 1.0, x, 10, 1e-12) + GK::integrate(h, x, m, 10, 1e-12);
  };
  auto h1 = [&](double y) {
    const double below = (tau - 1) / (tau - 1 - sigma) * (1.0 - std::pow(y, sigma - tau + 1));
    const double above = (tau - 1) / (tau - 2) * (std::pow(y, 2 - tau) - std::pow(m, 2 - tau));
    return (y * below + std::pow(y, sigma) * above) / cm;
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(two[i], single[i] * single[i], 1e-12 * two[i]);
    EXPECT_NEAR(three[i], single[i] * single[i] * single[i], 1e-12 * three[i]);
    if (i % 16 == 0) {
      EXPECT_NEAR(single[i], h1(grid.x[i]), 1e-9 * single[i]);
      EXPECT_NEAR(nested[i], split(grid.x[i], h1), 1e-8 * nested[i]) << "x " << grid.x[i];
    }
  }
}
