#include "kbrg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kbrg/errors.hpp"

namespace kbrg {

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw DataError("eigenvalues need a square matrix");
  if (!matrix.allFinite()) throw DataError("matrix has non-finite entries");
  if (matrix.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

SpectralSample eigenvalues(const SymmetricMatrixSample& matrix) {
  SpectralSample s;
  s.eigenvalues = symmetric_eigenvalues(matrix.entries);
  s.kind = matrix.kind;
  s.params = matrix.params;
  s.weight_seed = matrix.weight_seed;
  s.edge_seed = matrix.edge_seed;
  return s;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
}

EmpiricalMeasure EmpiricalMeasure::pooled(std::span<const SpectralSample> samples) {
  std::vector<double> all;
  for (const auto& s : samples) all.insert(all.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  return EmpiricalMeasure(std::move(all));
}

double EmpiricalMeasure::cdf(double x) const {
  const auto it = std::upper_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

double EmpiricalMeasure::cdf_left(double x) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), x);
  return static_cast<double>(it - points_.begin()) / static_cast<double>(points_.size());
}

namespace {

// sup_x [F(x - eps) - G(x)]. G is constant between its support points and
// F(. - eps) is non-decreasing, so the supremum is approached from the left
// of each jump of G.
double shifted_excess(const EmpiricalMeasure& f, const EmpiricalMeasure& g, double eps) {
  double worst = 0.0;
  const auto pts = g.points();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0 && pts[k] == pts[k - 1]) continue;
    const double g_left = static_cast<double>(k) / static_cast<double>(pts.size());
    worst = std::max(worst, f.cdf_left(pts[k] - eps) - g_left);
  }
  return worst;
}

bool levy_holds(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double eps) {
  return shifted_excess(mu, nu, eps) <= eps && shifted_excess(nu, mu, eps) <= eps;
}

}  // namespace

double levy_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  if (mu.empty() || nu.empty()) throw DataError("Levy distance needs non-empty measures");
  if (levy_holds(mu, nu, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (levy_holds(mu, nu, mid)) hi = mid; else lo = mid;
  }
  return hi;
}

double ks_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  if (mu.empty() || nu.empty()) throw DataError("KS distance needs non-empty measures");
  double worst = 0.0;
  for (const auto* m : {&mu, &nu})
    for (double x : m->points()) worst = std::max(worst, std::abs(mu.cdf(x) - nu.cdf(x)));
  return worst;
}

double empirical_moment(std::span<const double> values, int order) {
  if (order < 2 || order % 2 != 0) throw ParameterError("moment order must be an even integer >= 2");
  if (order > 20) throw ParameterError("moment order above 20 risks overflow");
  if (values.empty()) throw DataError("moment of an empty sample");
  double total = 0.0;
  for (double v : values) total += std::pow(v, order);
  return total / static_cast<double>(values.size());
}

double empirical_moment(const SpectralSample& sample, int order) {
  return empirical_moment(sample.eigenvalues, order);
}

std::vector<SurvivalPoint> survival_function(const EmpiricalMeasure& pooled,
                                             std::span<const double> grid) {
  if (pooled.empty()) throw DataError("survival function of an empty eigenvalue pool");
  std::vector<SurvivalPoint> table;
  table.reserve(grid.size());
  for (double x : grid) table.push_back({x, 1.0 - pooled.cdf(x)});
  return table;
}

std::vector<SurvivalPoint> survival_function(std::span<const SpectralSample> samples,
                                             std::span<const double> grid) {
  return survival_function(EmpiricalMeasure::pooled(samples), grid);
}

TailFit tail_fit(std::span<const SurvivalPoint> table, double x_min) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& p : table) {
    if (p.x >= x_min && p.x > 0.0 && p.survival > 0.0) {
      lx.push_back(std::log(p.x));
      ly.push_back(std::log(p.survival));
    }
  }
  const std::size_t n = lx.size();
  if (n < 8)
    throw DataError("tail fit needs at least 8 grid points above x_min with positive survival (got " +
                    std::to_string(n) + ")");
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw DataError("tail fit grid points are degenerate");
  TailFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ssr += r * r;
  }
  const double s2 = ssr / static_cast<double>(n - 2);
  fit.slope_stderr = std::sqrt(s2 / sxx);
  fit.intercept_stderr = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  return fit;
}

double quantile(std::span<const double> sorted_values, double q) {
  if (sorted_values.empty()) throw DataError("quantile of an empty sample");
  q = std::clamp(q, 0.0, 1.0);
  const double pos = q * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted_values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac;
}

std::vector<double> freedman_diaconis_edges(std::span<const double> values) {
  if (values.empty()) throw DataError("histogram of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
  std::size_t bins = 1;
  if (width > 0.0 && hi > lo) bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
  bins = std::clamp<std::size_t>(bins, 1, 100000);
  if (hi == lo) return {lo - 0.5, hi + 0.5};
  return linear_grid(lo, hi, bins + 1);
}

Histogram histogram(std::span<const double> values, std::span<const double> edges) {
  if (edges.size() < 2) throw ParameterError("histogram needs at least two edges");
  if (!std::is_sorted(edges.begin(), edges.end())) throw ParameterError("histogram edges must be ascending");
  Histogram h;
  h.edges.assign(edges.begin(), edges.end());
  h.counts.assign(edges.size() - 1, 0);
  for (double v : values) {
    if (v < edges.front() || v > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    auto bin = static_cast<std::size_t>(it - edges.begin());
    bin = bin == 0 ? 0 : bin - 1;
    if (bin >= h.counts.size()) bin = h.counts.size() - 1;  // right edge is closed
    ++h.counts[bin];
    ++h.total;
  }
  return h;
}

std::vector<double> standardize(std::span<const double> values) {
  if (values.empty()) throw DataError("cannot standardize an empty sample");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double second = 0.0;
  for (double v : values) second += (v - mean) * (v - mean);
  second /= n;
  if (!(second > 0.0)) throw DataError("cannot standardize a degenerate sample");
  const double scale = 1.0 / std::sqrt(second);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - mean) * scale);
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ParameterError("log grid needs 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count < 2) throw ParameterError("linear grid needs lo <= hi and count >= 2");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  g.back() = hi;
  return g;
}

}  // namespace kbrg
