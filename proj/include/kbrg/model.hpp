#pragma once

// Model parameters, torus geometry, Pareto weights and connection kernels.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kbrg {

enum class KernelKind { Sigma, Trivial, Strong, Product, PrefAttach };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel(std::string_view name);

inline constexpr double kUntruncated = std::numeric_limits<double>::infinity();

struct ModelParams {
  int n = 64;  // side length N
  int d = 1;
  double alpha = 0.5;
  double tau = 4.0;
  double sigma = 1.0;
  double trunc_m = kUntruncated;
  KernelKind kernel = KernelKind::Sigma;

  /// Number of vertices N^d.
  std::size_t order() const;
  bool truncated() const { return trunc_m < kUntruncated; }

  /// Type invariants: N >= 1, d in {1,2}, alpha >= 0, tau > 2,
  /// sigma in (0, tau-1), trunc_m > 1. Throws ParameterError.
  void validate() const;

  /// Invariants plus the dense regime alpha < d required by every
  /// limit-theorem workflow.
  void validate_dense() const;

  /// Preconditions for the untruncated Stieltjes fixed point: tau > 3 and
  /// sigma < tau - 2.
  void validate_untruncated_stieltjes() const;
};

struct TorusPoint {
  std::vector<int> coords;  // 1-based, each in [1, N]
};

/// l1 torus distance sum_l min(|i_l - j_l|, N - |i_l - j_l|).
int torus_distance(const TorusPoint& i, const TorusPoint& j, int n);

/// Row-major linear index in [0, N^d) <-> torus point.
TorusPoint point_from_index(std::size_t index, int n, int d);
std::size_t index_from_point(const TorusPoint& p, int n);

/// Distance between two vertices given by linear index.
int index_distance(std::size_t a, std::size_t b, int n, int d);

struct WeightVector {
  std::vector<double> values;
  bool truncated = false;
  double trunc_m = kUntruncated;
  std::uint64_t seed = 0;
};

/// Inverse-CDF Pareto draw W = U^{-1/(tau-1)} for U in (0, 1].
double pareto_from_uniform(double u, double tau);

/// Hard truncation W 1{W <= m}.
inline double hard_truncate(double w, double m) { return w <= m ? w : 0.0; }

/// i.i.d. Pareto marks for all N^d vertices; hard-truncated when
/// params.trunc_m is finite. Draw i uses counter i of the seed's stream.
WeightVector sample_weights(const ModelParams& params, std::uint64_t seed);

/// Exponent of the preferential-attachment kernel, alpha (tau-1)/d - 1.
double pref_attach_sigma(const ModelParams& params);

/// kappa(w, v) for the chosen kernel family. `sigma` is used by the Sigma
/// kernel only; PrefAttach derives its exponent from params.
double kernel_value(KernelKind kind, double sigma, double w, double v,
                    const ModelParams& params);

/// True when the selected kernel is only piecewise smooth across w = v
/// (max/min forms other than w v).
bool kernel_has_diagonal_kink(const ModelParams& params);

/// Shorthand for the kernel selected in params.
double kernel_value(const ModelParams& params, double w, double v);

/// p_ij = kappa(W_i, W_j) / ||i - j||^alpha, capped at 1.
double connection_probability(const TorusPoint& i, const TorusPoint& j,
                              const WeightVector& weights, const ModelParams& params);

/// Exact c_N = N^{-d} sum_{i != j} ||i - j||^{-alpha}.
double scaling_constant(const ModelParams& params);

/// Table of ||.||^{-alpha} indexed by torus distance (entry 0 unused).
std::vector<double> distance_power_table(const ModelParams& params);

}  // namespace kbrg
