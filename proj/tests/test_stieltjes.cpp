#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kbrg/errors.hpp"
#include "kbrg/moments.hpp"
#include "kbrg/stieltjes.hpp"
#include "oracles.hpp"

using namespace kbrg;

namespace {

ModelParams params(KernelKind kernel = KernelKind::Sigma, double m = kUntruncated) {
  ModelParams p;
  p.tau = 4.0;
  p.sigma = 1.0;
  p.kernel = kernel;
  p.trunc_m = m;
  return p;
}

Complex solve(const ModelParams& p, const WeightGrid& grid, Complex z) {
  return stieltjes_transform(solve_fixed_point(z, grid, p, SolverConfig{}), grid);
}

}  // namespace

TEST(Stieltjes, TrivialKernelGivesSemicircle) {
  const auto p = params(KernelKind::Trivial);
  const auto grid = make_weight_grid(p, 64);
  for (Complex z : {Complex(0.0, 1.0), Complex(0.5, 0.5), Complex(-1.0, 0.1), Complex(2.5, 0.2), Complex(1.9, 0.02)})
    EXPECT_LT(std::abs(solve(p, grid, z) - oracle::semicircle_stieltjes(z)), 1e-8) << z;
}

TEST(Stieltjes, DegenerateLawGivesSemicircle) {
  const auto p = params();
  const auto grid = make_weight_grid(p, LawVariant::Degenerate, 8);
  for (Complex z : {Complex(0.0, 1.0), Complex(1.2, 0.05)})
    EXPECT_LT(std::abs(solve(p, grid, z) - oracle::semicircle_stieltjes(z)), 1e-8) << z;
}

TEST(Stieltjes, ApplyTOnConstantField) {
  const auto p = params(KernelKind::Trivial);
  const auto grid = make_weight_grid(p, 32);
  StieltjesField f;
  f.z = Complex(0.3, 0.7);
  const Complex c(0.1, 0.4);
  f.a.assign(grid.size(), c);
  const auto g = apply_T(f, grid, p);
  const Complex expect = -1.0 / (f.z + c * grid.total_mass());
  for (const auto& v : g.a) EXPECT_LT(std::abs(v - expect), 1e-14);
}

TEST(Stieltjes, LargeImaginaryPartBehavesLikeMinusInverseZ) {
  const auto p = params();
  const auto grid = make_weight_grid(p);
  const Complex z(0.3, 200.0);
  SolverConfig cfg;
  cfg.tolerance = 1e-15;
  const Complex s = stieltjes_transform(solve_fixed_point(z, grid, p, cfg), grid);
  // S(z) = -1/z - M_2/z^3 + O(z^-5)
  EXPECT_LT(std::abs(s + 1.0 / z), 3.0 / std::pow(std::abs(z), 3));
  const Complex second = -(s + 1.0 / z) * z * z * z;
  EXPECT_NEAR(second.real(), 2.25, 2e-3);
}

TEST(Stieltjes, FixedPointIsUniqueAcrossStarts) {
  const auto p = params();
  const auto grid = make_weight_grid(p, 128);
  const FixedPointOperator op(grid, p, default_beta(p));
  SolverConfig cfg;
  const Complex z(0.4, 4.0);
  const auto a = iterate_at(op, z, std::vector<Complex>(grid.size(), -1.0 / z), cfg);
  const auto b = iterate_at(op, z, std::vector<Complex>(grid.size(), Complex(0.0, 0.2)), cfg);
  ASSERT_TRUE(a.converged);
  ASSERT_TRUE(b.converged);
  EXPECT_LT(op.distance(a.a, b.a), 1e-9);
  for (const auto& v : a.a) EXPECT_GT(v.imag(), 0.0);
}

TEST(Stieltjes, ReflectionSymmetry) {
  const auto p = params();
  const auto grid = make_weight_grid(p, 128);
  for (Complex z : {Complex(0.7, 0.3), Complex(2.0, 0.05)}) {
    const Complex s = solve(p, grid, z);
    const Complex r = solve(p, grid, -std::conj(z));
    EXPECT_LT(std::abs(r + std::conj(s)), 1e-9) << z;
  }
}

TEST(Stieltjes, TruncatedLawsApproachTheUntruncatedTransform) {
  const Complex z(0.5, 0.5);
  const auto pu = params();
  const Complex limit = solve(pu, make_weight_grid(pu), z);
  double previous = std::numeric_limits<double>::infinity();
  for (double m : {10.0, 30.0, 100.0}) {
    const auto p = params(KernelKind::Sigma, m);
    const double gap = std::abs(solve(p, make_weight_grid(p), z) - limit);
    EXPECT_LT(gap, previous) << "m " << m;
    previous = gap;
  }
  EXPECT_LT(previous, 1e-2);
}

TEST(Stieltjes, UnconvergedFieldIsAStateError) {
  const auto p = params();
  const auto grid = make_weight_grid(p, 32);
  StieltjesField f;
  f.z = Complex(0.0, 1.0);
  f.a.assign(grid.size(), Complex(0.0, 1.0));
  EXPECT_THROW(stieltjes_transform(f, grid), StateError);
}

TEST(Stieltjes, RefusesOutsideAdmissibleRange) {
  auto p = params();
  p.tau = 3.0;
  p.sigma = 0.5;
  EXPECT_THROW(make_weight_grid(p), DomainError);
  p.tau = 4.0;
  p.sigma = 2.5;
  EXPECT_THROW(make_weight_grid(p), DomainError);
  p.sigma = 1.0;
  const auto grid = make_weight_grid(p, 32);
  EXPECT_THROW(solve_fixed_point(Complex(0.0, 0.0), grid, p, SolverConfig{}), DomainError);
  SolverConfig bad;
  bad.damping = 1.5;
  EXPECT_THROW(solve_fixed_point(Complex(0.0, 1.0), grid, p, bad), ParameterError);
}

TEST(Density, SemicircleAtTheOrigin) {
  const auto p = params(KernelKind::Trivial);
  const auto grid = make_weight_grid(p, 32);
  const auto d = density_by_inversion(p, grid, SolverConfig{}, {-1.0, 0.0, 1.0}, 1e-3);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d[1].density, 1.0 / std::numbers::pi, 1e-3);
  EXPECT_NEAR(d[0].density, std::sqrt(3.0) / (2.0 * std::numbers::pi), 1e-3);
  EXPECT_NEAR(d[0].density, d[2].density, 1e-9);
}

TEST(Density, FailedAbscissaeAreReported) {
  const auto p = params();
  const auto grid = make_weight_grid(p, 64);
  SolverConfig cfg;
  cfg.max_iterations = 2;
  try {
    density_by_inversion(p, grid, cfg, {0.0, 0.5}, 1e-2);
    FAIL() << "expected PartialResultError";
  } catch (const PartialResultError& e) {
    EXPECT_EQ(e.failed(), (std::vector<double>{0.0, 0.5}));
  }
}

TEST(Contraction, ConstantIsFiniteInRange) {
  const double beta = default_beta(params());
  EXPECT_GT(beta, 2.0);
  EXPECT_LT(beta, 3.0);
  EXPECT_NEAR(contraction_constant(4.0, 1.0, 2.5), 3.0 * (2.0 + 2.0), 1e-12);
}

TEST(Stieltjes, LaurentSeriesMatchesMomentsOffSigmaOne) {
  auto p = params(KernelKind::Sigma, 20.0);
  p.sigma = 0.5;
  const auto grid = make_weight_grid(p, LawVariant::Conditional);
  const Complex z(0.0, 20.0);
  SolverConfig cfg;
  cfg.tolerance = 1e-15;
  const Complex s = stieltjes_transform(solve_fixed_point(z, grid, p, cfg), grid);
  Complex laurent = -1.0 / z;
  for (int k = 1; k <= 4; ++k)
    laurent -= limiting_moment_value(k, p, LawVariant::Conditional, MomentMethod::TreeQuadrature) / std::pow(z, 2 * k + 1);
  const double remainder = 2.0 * truncated_moment_bound(5, 20.0, 0.5) / std::pow(std::abs(z), 11);
  EXPECT_LT(std::abs(s - laurent), remainder);
  EXPECT_LT(std::abs(s - laurent), 1e-9);
}
