#pragma once

// Limiting even moments M_{2k} = sum over NC_2(2k) of the expected product
// of kernel values along the edges of the walk tree, evaluated three ways:
// block-size factorization (sigma = 1 only), tree quadrature (message
// passing leaf-to-root over a Gauss-Legendre weight grid) and Monte Carlo.

#include <cstdint>
#include <string_view>
#include <vector>

#include "kbrg/model.hpp"
#include "kbrg/partitions.hpp"
#include "kbrg/quadrature.hpp"

namespace kbrg {

enum class MomentMethod { ClosedFormSigma1, TreeQuadrature, MonteCarlo };

std::string_view to_string(MomentMethod method);
MomentMethod parse_moment_method(std::string_view name);

struct MomentOptions {
  int quadrature_points = 128;
  /// Untruncated quadrature: neglected tail of each factor stays below this.
  double tail_tolerance = 1e-10;
  std::uint64_t mc_trials = 100000;
  std::uint64_t mc_seed = 0x5eed;
};

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for deterministic methods
};

/// Law over which the weights are integrated: params.trunc_m and `law`
/// together (the truncation level is ignored for Untruncated/Degenerate).
ParetoLaw moment_law(const ModelParams& params, LawVariant law);

/// Throws DomainError if the moment of order 2k diverges for this
/// parameter/law combination (untruncated needs k (sigma v 1) < tau - 1).
void check_moment_finite(int k, const ModelParams& params, LawVariant law);

MomentEstimate limiting_moment(int k, const ModelParams& params, LawVariant law, MomentMethod method,
                               const MomentOptions& opts = {});

/// Convenience: value of limiting_moment.
double limiting_moment_value(int k, const ModelParams& params, LawVariant law, MomentMethod method,
                             const MomentOptions& opts = {});

/// 2 (tau-1)^2 / ((tau-2)(2 tau - sigma - 3)).
double second_moment_closed_form(double tau, double sigma);

/// Monte Carlo estimate with standard error; trials >= 10^4.
MomentEstimate moment_oracle_monte_carlo(int k, const ModelParams& params, LawVariant law,
                                         std::uint64_t trials, std::uint64_t seed);

/// Expected edge product over one walk tree, by message passing on `grid`.
double tree_expectation(const WalkTree& tree, const WeightQuadrature& grid, const ModelParams& params);

/// H_pi at the grid nodes: the tree expectation conditioned on the root
/// weight being x_j.
std::vector<double> root_message(const WalkTree& tree, const WeightQuadrature& grid,
                                 const ModelParams& params);

/// Grid used by the tree quadrature for this law (appends the atom at 0 of
/// a hard-truncated law as an extra node).
WeightQuadrature moment_grid(int k, const ModelParams& params, LawVariant law, const MomentOptions& opts = {});

/// Moment bound (m^{1+sigma})^k C_k for a truncated law.
double truncated_moment_bound(int k, double m, double sigma);

/// One draw from the weight law, driven by a uniform in (0, 1].
double sample_from_law(const ParetoLaw& law, double u);

}  // namespace kbrg
