#pragma once

// Quadrature rules against the (possibly truncated) Pareto weight law.

#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace kbrg {

/// Which weight law an integral is taken against.
///  - Untruncated:   Pareto(tau), density (tau-1) x^{-tau} on [1, inf).
///  - HardTruncated: law of W 1{W <= m}; the Pareto density restricted to
///                   [1, m] plus an atom of mass m^{-(tau-1)} at 0.
///  - Conditional:   Pareto conditioned on W <= m, i.e. the restricted
///                   density divided by c_m = 1 - m^{-(tau-1)}.
///  - Degenerate:    W = 1 almost surely.
enum class LawVariant { Untruncated, HardTruncated, Conditional, Degenerate };

std::string_view to_string(LawVariant law);
LawVariant parse_law(std::string_view name);

struct ParetoLaw {
  double tau = 4.0;
  double m = 0.0;  // truncation level; ignored for Untruncated/Degenerate
  LawVariant variant = LawVariant::Untruncated;

  /// c_m = 1 - m^{-(tau-1)}.
  double normalizer() const;
  /// Mass of the atom at 0 (non-zero only for HardTruncated).
  double atom_at_zero() const;
};

/// E[W^ell] under the given law. Hard truncation:
/// (tau-1)/(tau-1-ell) (1 - m^{ell-tau+1}), or (tau-1) ln m when ell = tau-1;
/// the conditional law divides that by c_m. Untruncated requires ell < tau-1.
double truncated_pareto_moment(double ell, double tau, double m, LawVariant law);

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int points);

/// Discretization of a weight law on [1, x_max]: Gauss-Legendre in
/// u = log x. `mass[j]` integrates against the law (the atom at 0 of a
/// hard-truncated law is not represented); `du[j]` integrates plain
/// functions of u, so sum_j f(x_j) x_j^{1-beta} du[j] = int f(x) x^{-beta} dx.
struct WeightQuadrature {
  ParetoLaw law;
  double x_max = 1.0;
  std::vector<double> x;
  std::vector<double> mass;
  std::vector<double> du;

  std::size_t size() const { return x.size(); }
  double total_mass() const;
};

/// x_max such that the Pareto tail mass above it is below `tail_mass`.
double untruncated_cutoff(double tau, double tail_mass);

/// Builds the rule. For Untruncated laws `x_max` must be supplied (> 1);
/// truncated laws use x_max = m; Degenerate uses the single node x = 1.
WeightQuadrature make_weight_quadrature(const ParetoLaw& law, int points, double x_max = 0.0);

/// W with sum_j W(i, j) g(x_j) ~ int kappa(x_i, y) g(y) law(dy) on the grid
/// nodes. Without `diagonal_kink` this is kappa(x_i, x_j) mass_j. With it,
/// each row is integrated separately on y < x_i and y > x_i against the
/// polynomial interpolant (in u = log y) of g times the law density, so a
/// kernel that is only piecewise smooth across y = x keeps the spectral
/// accuracy of the Gauss rule. A node at x = 0 (the atom of a hard-truncated
/// law) is always summed plainly.
Eigen::MatrixXd weighted_kernel_matrix(const WeightQuadrature& grid,
                                       const std::function<double(double, double)>& kappa, bool diagonal_kink);

}  // namespace kbrg
