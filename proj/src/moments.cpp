#include "kbrg/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "kbrg/errors.hpp"
#include "kbrg/rng.hpp"

namespace kbrg {

std::string_view to_string(MomentMethod method) {
  switch (method) {
    case MomentMethod::ClosedFormSigma1: return "closed-form-sigma1";
    case MomentMethod::TreeQuadrature: return "tree-quadrature";
    case MomentMethod::MonteCarlo: return "monte-carlo";
  }
  return "tree-quadrature";
}

MomentMethod parse_moment_method(std::string_view name) {
  for (auto m : {MomentMethod::ClosedFormSigma1, MomentMethod::TreeQuadrature, MomentMethod::MonteCarlo})
    if (name == to_string(m)) return m;
  throw ParameterError("unknown moment method '" + std::string(name) +
                       "' (expected closed-form-sigma1|tree-quadrature|monte-carlo)");
}

ParetoLaw moment_law(const ModelParams& params, LawVariant law) {
  ParetoLaw out;
  out.tau = params.tau;
  out.m = params.trunc_m;
  out.variant = law;
  if ((law == LawVariant::HardTruncated || law == LawVariant::Conditional) && !params.truncated())
    throw ParameterError("truncated weight law requested but trunc_m is infinite");
  return out;
}

void check_moment_finite(int k, const ModelParams& params, LawVariant law) {
  if (k < 0) throw ParameterError("moment index k must be non-negative");
  if (law != LawVariant::Untruncated) return;
  const double power = k * std::max(params.sigma, 1.0);
  if (params.kernel == KernelKind::Trivial) return;
  if (!(power < params.tau - 1.0)) {
    std::ostringstream os;
    os << "M_" << 2 * k << " may diverge for the untruncated law: requires k*(sigma v 1) < tau - 1, got "
       << power << " >= " << params.tau - 1.0;
    throw DomainError(os.str());
  }
}

double second_moment_closed_form(double tau, double sigma) {
  if (!(tau > 2.0)) throw ParameterError("second moment needs tau > 2");
  if (!(sigma > 0.0 && sigma < tau - 1.0)) throw ParameterError("second moment needs 0 < sigma < tau - 1");
  return 2.0 * (tau - 1.0) * (tau - 1.0) / ((tau - 2.0) * (2.0 * tau - sigma - 3.0));
}

double truncated_moment_bound(int k, double m, double sigma) {
  return std::pow(m, (1.0 + sigma) * k) * static_cast<double>(catalan(k));
}

double sample_from_law(const ParetoLaw& law, double u) {
  const double shape = law.tau - 1.0;
  switch (law.variant) {
    case LawVariant::Degenerate: return 1.0;
    case LawVariant::Untruncated: return pareto_from_uniform(u, law.tau);
    case LawVariant::HardTruncated: return hard_truncate(pareto_from_uniform(u, law.tau), law.m);
    case LawVariant::Conditional: {
      // invert F(t) = (1 - t^{-shape}) / c_m on [1, m]
      const double x = std::pow(1.0 - u * law.normalizer(), -1.0 / shape);
      return std::min(x, law.m);
    }
  }
  return 1.0;
}

WeightQuadrature moment_grid(int k, const ModelParams& params, LawVariant law, const MomentOptions& opts) {
  const auto pl = moment_law(params, law);
  double x_max = 0.0;
  if (law == LawVariant::Untruncated) {
    // every vertex carries at most x^{k (sigma v 1)}; cut where that
    // factor's neglected tail drops below tolerance
    const double shape = params.tau - 1.0;
    const double power = std::max(1.0, k * std::max(params.sigma, 1.0));
    if (power < shape) {
      x_max = std::pow(opts.tail_tolerance * (shape - power) / shape, 1.0 / (power - shape));
    } else {
      x_max = untruncated_cutoff(params.tau, opts.tail_tolerance);
    }
    x_max = std::min(x_max, 1e12);
  }
  auto grid = make_weight_quadrature(pl, opts.quadrature_points, x_max);
  if (const double atom = pl.atom_at_zero(); atom > 0.0) {
    grid.x.insert(grid.x.begin(), 0.0);
    grid.mass.insert(grid.mass.begin(), atom);
    grid.du.insert(grid.du.begin(), 0.0);
  }
  return grid;
}

namespace {

// weighted(i, j) integrates kappa(x_i, .) h against the law
Eigen::MatrixXd weighted_matrix(const WeightQuadrature& grid, const ModelParams& params) {
  return weighted_kernel_matrix(
      grid, [&params](double w, double v) { return kernel_value(params, w, v); }, kernel_has_diagonal_kink(params));
}

Eigen::VectorXd message(int vertex, const std::vector<std::vector<int>>& kids, const Eigen::MatrixXd& weighted) {
  Eigen::VectorXd out = Eigen::VectorXd::Ones(weighted.rows());
  for (int c : kids[static_cast<std::size_t>(vertex)]) {
    const Eigen::VectorXd child = message(c, kids, weighted);
    out.array() *= (weighted * child).array();
  }
  return out;
}

std::vector<double> root_message_impl(const WalkTree& tree, const Eigen::MatrixXd& weighted) {
  if (!tree.is_tree) throw DomainError("tree quadrature needs a non-crossing partition (walk graph is not a tree)");
  const auto msg = message(tree.root, tree.children(), weighted);
  return {msg.data(), msg.data() + msg.size()};
}

double block_size_moment(int k, const ModelParams& params, const ParetoLaw& law) {
  const bool sigma_one = (params.kernel == KernelKind::Sigma && params.sigma == 1.0) ||
                         params.kernel == KernelKind::Product;
  if (!sigma_one) throw ParameterError("block-size factorization requires sigma = 1 (product kernel)");
  if (k == 0) return 1.0;
  double total = 0.0;
  for (const auto& pi : enumerate_nc2(k)) {
    double term = 1.0;
    for (const auto& block : gamma_pi(pi).blocks)
      term *= truncated_pareto_moment(static_cast<double>(block.size()), law.tau, law.m, law.variant);
    total += term;
  }
  return total;
}

}  // namespace

std::vector<double> root_message(const WalkTree& tree, const WeightQuadrature& grid, const ModelParams& params) {
  return root_message_impl(tree, weighted_matrix(grid, params));
}

double tree_expectation(const WalkTree& tree, const WeightQuadrature& grid, const ModelParams& params) {
  const auto h = root_message(tree, grid, params);
  double total = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) total += grid.mass[j] * h[j];
  return total;
}

MomentEstimate moment_oracle_monte_carlo(int k, const ModelParams& params, LawVariant law,
                                         std::uint64_t trials, std::uint64_t seed) {
  if (trials < 10000) throw ParameterError("Monte Carlo moment oracle needs at least 10^4 trials");
  check_moment_finite(k, params, law);
  if (k == 0) return {1.0, 0.0};
  const auto pl = moment_law(params, law);
  const auto partitions = enumerate_nc2(k);
  const CounterRng rng(seed, static_cast<std::uint64_t>(k));
  const auto vertices = static_cast<std::uint64_t>(k + 1);
  MomentEstimate est;
  double variance_sum = 0.0;
  std::vector<double> w(static_cast<std::size_t>(vertices));
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    const auto tree = walk_tree(partitions[p]);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const std::uint64_t base = (static_cast<std::uint64_t>(p) * trials + t) * vertices;
      for (std::uint64_t v = 0; v < vertices; ++v) w[v] = sample_from_law(pl, rng.uniform(base + v));
      double prod = 1.0;
      for (const auto& [a, b] : tree.edges)
        prod *= kernel_value(params, w[static_cast<std::size_t>(a)], w[static_cast<std::size_t>(b)]);
      const double delta = prod - mean;
      mean += delta / static_cast<double>(t + 1);
      m2 += delta * (prod - mean);
    }
    est.value += mean;
    variance_sum += m2 / static_cast<double>(trials - 1) / static_cast<double>(trials);
  }
  est.std_error = std::sqrt(variance_sum);
  return est;
}

MomentEstimate limiting_moment(int k, const ModelParams& params, LawVariant law, MomentMethod method,
                               const MomentOptions& opts) {
  check_moment_finite(k, params, law);
  switch (method) {
    case MomentMethod::ClosedFormSigma1:
      return {block_size_moment(k, params, moment_law(params, law)), 0.0};
    case MomentMethod::TreeQuadrature: {
      if (k == 0) return {1.0, 0.0};
      const auto grid = moment_grid(k, params, law, opts);
      const auto weighted = weighted_matrix(grid, params);
      double total = 0.0;
      for (const auto& pi : enumerate_nc2(k)) {
        const auto h = root_message_impl(walk_tree(pi), weighted);
        for (std::size_t j = 0; j < h.size(); ++j) total += grid.mass[j] * h[j];
      }
      return {total, 0.0};
    }
    case MomentMethod::MonteCarlo:
      return moment_oracle_monte_carlo(k, params, law, opts.mc_trials, opts.mc_seed);
  }
  throw ParameterError("unhandled moment method");
}

double limiting_moment_value(int k, const ModelParams& params, LawVariant law, MomentMethod method,
                             const MomentOptions& opts) {
  return limiting_moment(k, params, law, method, opts).value;
}

}  // namespace kbrg
