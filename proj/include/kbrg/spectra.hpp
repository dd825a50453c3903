#pragma once

// Eigenvalues, empirical spectral distributions and the statistics computed
// on them: Levy / Kolmogorov-Smirnov distances, moments, survival functions
// and power-law tail fits.

#include <cstdint>
#include <span>
#include <vector>

#include "kbrg/ensembles.hpp"

namespace kbrg {

struct SpectralSample {
  std::vector<double> eigenvalues;  // ascending
  MatrixKind kind = MatrixKind::Adjacency;
  ModelParams params;
  std::uint64_t weight_seed = 0;
  std::uint64_t edge_seed = 0;
};

/// Full spectrum of a symmetric matrix, ascending. Throws DataError on
/// non-finite entries.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& matrix);
SpectralSample eigenvalues(const SymmetricMatrixSample& matrix);

/// Uniform measure on a finite set of support points (kept sorted).
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  explicit EmpiricalMeasure(std::vector<double> points);
  static EmpiricalMeasure pooled(std::span<const SpectralSample> samples);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// F(x) = mass of (-inf, x].
  double cdf(double x) const;
  /// F(x-) = mass of (-inf, x).
  double cdf_left(double x) const;

 private:
  std::vector<double> points_;
};

/// One-dimensional Levy metric
/// inf{eps > 0 : F(x-eps) - eps <= G(x) <= F(x+eps) + eps for all x}.
double levy_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

/// sup_x |F(x) - G(x)|.
double ks_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

/// (1/n) sum lambda^order for even order in [2, 20].
double empirical_moment(const SpectralSample& sample, int order);
double empirical_moment(std::span<const double> values, int order);

struct SurvivalPoint {
  double x = 0.0;
  double survival = 0.0;
};

/// Fraction of pooled eigenvalues strictly greater than each grid point.
std::vector<SurvivalPoint> survival_function(std::span<const SpectralSample> samples,
                                             std::span<const double> grid);
std::vector<SurvivalPoint> survival_function(const EmpiricalMeasure& pooled,
                                             std::span<const double> grid);

struct TailFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  std::size_t points = 0;
};

/// Least-squares fit of log S(x) on log x over grid points with x >= x_min
/// and S(x) > 0. Needs at least 8 such points.
TailFit tail_fit(std::span<const SurvivalPoint> table, double x_min);

struct Histogram {
  std::vector<double> edges;        // size bins+1
  std::vector<std::size_t> counts;  // size bins
  std::size_t total = 0;
};

/// Freedman-Diaconis bin edges covering [min, max] of the data.
std::vector<double> freedman_diaconis_edges(std::span<const double> values);
Histogram histogram(std::span<const double> values, std::span<const double> edges);

/// Empirical quantile (linear interpolation between order statistics).
double quantile(std::span<const double> sorted_values, double q);

/// Shift to zero mean and rescale to unit second moment.
std::vector<double> standardize(std::span<const double> values);

std::vector<double> log_grid(double lo, double hi, std::size_t count);
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace kbrg
