#pragma once

// Fixed point a(z, x) (z + int a(z, y) kappa(x, y) mu(dy)) = -1 on a weight
// grid, the Stieltjes transform S(z) = int a(z, x) mu(dx) and density
// recovery f(x) = Im S(x + i eta) / pi.

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "kbrg/model.hpp"
#include "kbrg/quadrature.hpp"

namespace kbrg {

using Complex = std::complex<double>;

/// Grid nodes and masses for the weight law. The atom at 0 of a
/// hard-truncated law, if requested, is carried as an extra node x = 0.
using WeightGrid = WeightQuadrature;

/// Conditional law for finite trunc_m, untruncated law otherwise. The
/// untruncated cutoff drops at most `tail` of the mass and of E[W^{1 v sigma}].
WeightGrid make_weight_grid(const ModelParams& params, LawVariant law, int points = 256, double tail = 1e-10);
WeightGrid make_weight_grid(const ModelParams& params, int points = 256);

/// c~ = (tau-1) (1/(beta-2) + 1/(beta-1-sigma)).
double contraction_constant(double tau, double sigma, double beta);
/// Midpoint of (2 v (1+sigma), tau-1).
double default_beta(const ModelParams& params);

struct SolverConfig {
  double beta = std::numeric_limits<double>::quiet_NaN();  // NaN: midpoint
  double eta_start = 0.0;                                   // 0: 2 sqrt(c~)
  double eta_target = 1e-2;
  double continuation = 0.7;
  double damping = 0.5;
  double damping_fallback = 0.25;
  double tolerance = 1e-10;
  int max_iterations = 20000;  // per continuation stage
  bool record_history = false;

  double resolved_beta(const ModelParams& params) const;
  double resolved_eta_start(const ModelParams& params) const;
  void validate(const ModelParams& params) const;
};

struct StieltjesField {
  Complex z;
  std::vector<Complex> a;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
  // extremes over every iterate produced for this field
  double min_imag = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  std::vector<double> residual_history;
};

/// The map a -> -1/(z + K a) on a fixed grid, with the L1(nu) norm
/// ||f|| = int |f(x)| x^{-beta} dx.
class FixedPointOperator {
 public:
  FixedPointOperator(WeightGrid grid, const ModelParams& params, double beta);

  const WeightGrid& grid() const { return grid_; }
  const ModelParams& params() const { return params_; }
  double beta() const { return beta_; }

  /// (K a)(x_i) = int kappa(x_i, y) a(y) mu(dy) via weighted_kernel_matrix.
  std::vector<Complex> integral(const std::vector<Complex>& a) const;
  /// One application of T_z; re-checks Im > 0 and |a| <= 1/Im z.
  std::vector<Complex> apply(Complex z, const std::vector<Complex>& a) const;
  double distance(const std::vector<Complex>& a, const std::vector<Complex>& b) const;
  double norm(const std::vector<Complex>& a) const;

 private:
  WeightGrid grid_;
  ModelParams params_;
  double beta_;
  Eigen::MatrixXd weighted_;  // see weighted_kernel_matrix
  std::vector<double> nu_;    // x_j^{1-beta} du_j
};

/// One step of the recursion on the field's values.
StieltjesField apply_T(const StieltjesField& field, const WeightGrid& grid, const ModelParams& params);

/// Damped iteration from -1/z (or from `warm_start`), with eta-continuation
/// when Im z is below eta_start.
StieltjesField solve_fixed_point(Complex z, const WeightGrid& grid, const ModelParams& params,
                                 const SolverConfig& config);
StieltjesField solve_fixed_point(const FixedPointOperator& op, Complex z, const SolverConfig& config,
                                 const StieltjesField* warm_start = nullptr);

/// Damped iteration at a single z from the given start; no continuation.
StieltjesField iterate_at(const FixedPointOperator& op, Complex z, std::vector<Complex> start,
                          const SolverConfig& config);

Complex stieltjes_transform(const StieltjesField& field, const WeightGrid& grid);

struct DensityPoint {
  double x = 0.0;
  double density = 0.0;
  double eta = 0.0;
  double residual = 0.0;
};

/// f(x) = Im S(x + i eta_final) / pi on x_grid. Throws PartialResultError
/// naming every abscissa that did not converge.
std::vector<DensityPoint> density_by_inversion(const ModelParams& params, const WeightGrid& grid,
                                               const SolverConfig& config, const std::vector<double>& x_grid,
                                               double eta_final = 1e-2);

struct ContractionReport {
  Complex z;
  double c_tilde = 0.0;
  double bound = 0.0;  // c~ / eta^2
  /// ||a_{n+1} - a_n|| / ||a_n - a_{n-1}|| for the undamped iteration from
  /// -1/z, while the residual is above the roundoff floor.
  std::vector<double> residual_ratios;
  /// ||T b_n - T a*|| / ||b_n - a*|| with b_{n+1} - a* the renormalized image
  /// of b_n - a*: the contraction factor seen by a perturbation that is
  /// kept at fixed size so it never reaches the roundoff floor.
  std::vector<double> lipschitz_quotients;
};

ContractionReport measure_contraction(const FixedPointOperator& op, Complex z, const SolverConfig& config,
                                      int iterations = 20);

}  // namespace kbrg
