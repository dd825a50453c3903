#include "kbrg/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "kbrg/errors.hpp"
#include "kbrg/rng.hpp"

namespace kbrg {

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Sigma: return "sigma";
    case KernelKind::Trivial: return "trivial";
    case KernelKind::Strong: return "strong";
    case KernelKind::Product: return "product";
    case KernelKind::PrefAttach: return "prefattach";
  }
  return "sigma";
}

KernelKind parse_kernel(std::string_view name) {
  for (auto kind : {KernelKind::Sigma, KernelKind::Trivial, KernelKind::Strong,
                    KernelKind::Product, KernelKind::PrefAttach}) {
    if (name == to_string(kind)) return kind;
  }
  throw ParameterError("unknown kernel '" + std::string(name) +
                       "' (expected sigma|trivial|strong|product|prefattach)");
}

std::size_t ModelParams::order() const {
  std::size_t total = 1;
  for (int l = 0; l < d; ++l) total *= static_cast<std::size_t>(n);
  return total;
}

void ModelParams::validate() const {
  std::ostringstream err;
  if (n < 1) err << "n must be positive (got " << n << "); ";
  if (d != 1 && d != 2) err << "d must be 1 or 2 (got " << d << "); ";
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) err << "alpha must be >= 0; ";
  if (!(tau > 2.0) || !std::isfinite(tau)) err << "tau must be > 2 (got " << tau << "); ";
  if (!(sigma > 0.0 && sigma < tau - 1.0))
    err << "sigma must lie in (0, tau-1) = (0, " << tau - 1.0 << ") (got " << sigma << "); ";
  if (!(trunc_m > 1.0)) err << "trunc_m must be > 1 (got " << trunc_m << "); ";
  const auto msg = err.str();
  if (!msg.empty()) throw ParameterError("invalid model parameters: " + msg);
}

void ModelParams::validate_dense() const {
  validate();
  if (!(alpha < d)) {
    std::ostringstream err;
    err << "dense regime requires alpha < d (got alpha=" << alpha << ", d=" << d << ")";
    throw ParameterError(err.str());
  }
}

void ModelParams::validate_untruncated_stieltjes() const {
  validate();
  if (!(tau > 3.0))
    throw DomainError("untruncated Stieltjes fixed point requires tau > 3 (got tau=" +
                      std::to_string(tau) + ")");
  if (!(sigma < tau - 2.0))
    throw DomainError("untruncated Stieltjes fixed point requires sigma < tau - 2 (got sigma=" +
                      std::to_string(sigma) + ", tau-2=" + std::to_string(tau - 2.0) + ")");
}

int torus_distance(const TorusPoint& i, const TorusPoint& j, int n) {
  if (i.coords.size() != j.coords.size())
    throw ParameterError("torus points have different dimensions");
  int dist = 0;
  for (std::size_t l = 0; l < i.coords.size(); ++l) {
    const int a = i.coords[l];
    const int b = j.coords[l];
    if (a < 1 || a > n || b < 1 || b > n)
      throw ParameterError("torus coordinate out of range [1, N]");
    const int diff = std::abs(a - b);
    dist += std::min(diff, n - diff);
  }
  return dist;
}

TorusPoint point_from_index(std::size_t index, int n, int d) {
  TorusPoint p;
  p.coords.resize(static_cast<std::size_t>(d));
  for (int l = d - 1; l >= 0; --l) {
    p.coords[static_cast<std::size_t>(l)] = static_cast<int>(index % static_cast<std::size_t>(n)) + 1;
    index /= static_cast<std::size_t>(n);
  }
  return p;
}

std::size_t index_from_point(const TorusPoint& p, int n) {
  std::size_t index = 0;
  for (int c : p.coords) {
    if (c < 1 || c > n) throw ParameterError("torus coordinate out of range [1, N]");
    index = index * static_cast<std::size_t>(n) + static_cast<std::size_t>(c - 1);
  }
  return index;
}

int index_distance(std::size_t a, std::size_t b, int n, int d) {
  int dist = 0;
  const auto un = static_cast<std::size_t>(n);
  for (int l = 0; l < d; ++l) {
    const auto ca = static_cast<int>(a % un);
    const auto cb = static_cast<int>(b % un);
    const int diff = std::abs(ca - cb);
    dist += std::min(diff, n - diff);
    a /= un;
    b /= un;
  }
  return dist;
}

double pareto_from_uniform(double u, double tau) { return std::pow(u, -1.0 / (tau - 1.0)); }

WeightVector sample_weights(const ModelParams& params, std::uint64_t seed) {
  if (!(params.tau > 1.0)) throw ParameterError("Pareto sampling requires tau > 1");
  if (!(params.trunc_m > 1.0)) throw ParameterError("trunc_m must be > 1");
  WeightVector w;
  w.seed = seed;
  w.truncated = params.truncated();
  w.trunc_m = params.trunc_m;
  const CounterRng rng(seed);
  const std::size_t count = params.order();
  w.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double raw = pareto_from_uniform(rng.uniform(i), params.tau);
    w.values[i] = w.truncated ? hard_truncate(raw, params.trunc_m) : raw;
  }
  return w;
}

double pref_attach_sigma(const ModelParams& params) {
  return params.alpha * (params.tau - 1.0) / params.d - 1.0;
}

namespace {

double max_min_kernel(double w, double v, double exponent) {
  const double hi = std::max(w, v);
  const double lo = std::min(w, v);
  if (lo == 0.0 && exponent > 0.0) return 0.0;
  if (exponent == 1.0) return hi * lo;
  return hi * std::pow(lo, exponent);
}

}  // namespace

double kernel_value(KernelKind kind, double sigma, double w, double v,
                    const ModelParams& params) {
  switch (kind) {
    case KernelKind::Sigma: return max_min_kernel(w, v, sigma);
    case KernelKind::Trivial: return 1.0;
    case KernelKind::Strong: return std::max(w, v);
    case KernelKind::Product: return w * v;
    case KernelKind::PrefAttach: {
      // a non-positive exponent would make a truncated (zero) mark explode
      if (std::min(w, v) == 0.0) return 0.0;
      return max_min_kernel(w, v, pref_attach_sigma(params));
    }
  }
  return 0.0;
}

bool kernel_has_diagonal_kink(const ModelParams& params) {
  switch (params.kernel) {
    case KernelKind::Sigma: return params.sigma != 1.0;
    case KernelKind::Strong: return true;
    case KernelKind::PrefAttach: return pref_attach_sigma(params) != 1.0;
    case KernelKind::Trivial:
    case KernelKind::Product: return false;
  }
  return true;
}

double kernel_value(const ModelParams& params, double w, double v) {
  return kernel_value(params.kernel, params.sigma, w, v, params);
}

double connection_probability(const TorusPoint& i, const TorusPoint& j,
                              const WeightVector& weights, const ModelParams& params) {
  const int dist = torus_distance(i, j, params.n);
  if (dist == 0) throw DomainError("connection probability undefined for i == j (no self-loops)");
  const double wi = weights.values.at(index_from_point(i, params.n));
  const double wj = weights.values.at(index_from_point(j, params.n));
  const double r = kernel_value(params, wi, wj) * std::pow(static_cast<double>(dist), -params.alpha);
  return std::min(r, 1.0);
}

std::vector<double> distance_power_table(const ModelParams& params) {
  const int max_dist = params.d * (params.n / 2);
  std::vector<double> table(static_cast<std::size_t>(max_dist) + 1, 0.0);
  for (int r = 1; r <= max_dist; ++r)
    table[static_cast<std::size_t>(r)] = std::pow(static_cast<double>(r), -params.alpha);
  return table;
}

double scaling_constant(const ModelParams& params) {
  if (params.order() < 2) throw ParameterError("scaling constant needs at least two vertices");
  // The torus is vertex-transitive, so every row of the double sum is the
  // same; sum the row of vertex 0 grouped by distance.
  const int max_dist = params.d * (params.n / 2);
  std::vector<std::size_t> count(static_cast<std::size_t>(max_dist) + 1, 0);
  const std::size_t order = params.order();
  for (std::size_t j = 1; j < order; ++j)
    ++count[static_cast<std::size_t>(index_distance(0, j, params.n, params.d))];
  const auto table = distance_power_table(params);
  double total = 0.0;
  for (int r = 1; r <= max_dist; ++r)
    total += static_cast<double>(count[static_cast<std::size_t>(r)]) * table[static_cast<std::size_t>(r)];
  return total;
}

}  // namespace kbrg
