#include "kbrg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

#include "kbrg/errors.hpp"

namespace kbrg {

std::string_view to_string(LawVariant law) {
  switch (law) {
    case LawVariant::Untruncated: return "untruncated";
    case LawVariant::HardTruncated: return "hard";
    case LawVariant::Conditional: return "conditional";
    case LawVariant::Degenerate: return "degenerate";
  }
  return "untruncated";
}

LawVariant parse_law(std::string_view name) {
  for (auto law : {LawVariant::Untruncated, LawVariant::HardTruncated, LawVariant::Conditional,
                   LawVariant::Degenerate}) {
    if (name == to_string(law)) return law;
  }
  throw ParameterError("unknown weight law '" + std::string(name) +
                       "' (expected untruncated|hard|conditional|degenerate)");
}

double ParetoLaw::normalizer() const { return 1.0 - std::pow(m, -(tau - 1.0)); }

double ParetoLaw::atom_at_zero() const {
  return variant == LawVariant::HardTruncated ? std::pow(m, -(tau - 1.0)) : 0.0;
}

double truncated_pareto_moment(double ell, double tau, double m, LawVariant law) {
  if (law == LawVariant::Degenerate) return 1.0;
  const double shape = tau - 1.0;
  if (law == LawVariant::Untruncated || !std::isfinite(m)) {
    if (!(ell < shape))
      throw DomainError("E[W^" + std::to_string(ell) + "] diverges for the untruncated law: needs ell < tau-1 = " +
                        std::to_string(shape));
    return shape / (shape - ell);
  }
  if (!(m > 1.0)) throw ParameterError("truncation level must exceed 1");
  double value = 0.0;
  if (std::abs(ell - shape) < 1e-12) {
    value = shape * std::log(m);
  } else {
    value = shape / (shape - ell) * (1.0 - std::pow(m, ell - shape));
  }
  if (law == LawVariant::Conditional) value /= 1.0 - std::pow(m, -shape);
  return value;
}

GaussLegendre gauss_legendre(int points) {
  if (points < 1) throw ParameterError("Gauss-Legendre rule needs at least one point");
  GaussLegendre rule;
  const auto positive = boost::math::legendre_p_zeros<double>(points);
  for (double t : positive) {
    const double dp = boost::math::legendre_p_prime(points, t);
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    if (t == 0.0) {
      rule.nodes.push_back(0.0);
      rule.weights.push_back(w);
    } else {
      rule.nodes.push_back(t);
      rule.weights.push_back(w);
      rule.nodes.push_back(-t);
      rule.weights.push_back(w);
    }
  }
  std::vector<std::size_t> idx(rule.nodes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return rule.nodes[a] < rule.nodes[b]; });
  GaussLegendre sorted;
  for (auto i : idx) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  return sorted;
}

double WeightQuadrature::total_mass() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }

double untruncated_cutoff(double tau, double tail_mass) {
  return std::pow(tail_mass, -1.0 / (tau - 1.0));
}

WeightQuadrature make_weight_quadrature(const ParetoLaw& law, int points, double x_max) {
  WeightQuadrature q;
  q.law = law;
  if (law.variant == LawVariant::Degenerate) {
    q.x_max = 1.0;
    q.x = {1.0};
    q.mass = {1.0};
    q.du = {0.0};
    return q;
  }
  if (!(law.tau > 1.0)) throw ParameterError("weight law needs tau > 1");
  if (law.variant == LawVariant::Untruncated) {
    if (!(x_max > 1.0)) throw ParameterError("untruncated quadrature needs a cutoff x_max > 1");
    q.x_max = x_max;
  } else {
    if (!(law.m > 1.0) || !std::isfinite(law.m))
      throw ParameterError("truncated law needs a finite truncation level m > 1");
    q.x_max = law.m;
  }
  const auto rule = gauss_legendre(points);
  const double span = std::log(q.x_max);
  const double shape = law.tau - 1.0;
  const double scale = law.variant == LawVariant::Conditional ? 1.0 / law.normalizer() : 1.0;
  q.x.reserve(rule.nodes.size());
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double u = 0.5 * span * (rule.nodes[j] + 1.0);
    const double du = 0.5 * span * rule.weights[j];
    q.x.push_back(std::exp(u));
    q.du.push_back(du);
    q.mass.push_back(scale * du * shape * std::exp(-shape * u));
  }
  return q;
}

Eigen::MatrixXd weighted_kernel_matrix(const WeightQuadrature& grid,
                                       const std::function<double(double, double)>& kappa, bool diagonal_kink) {
  const auto g = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd w(g, g);
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j) w(i, j) = kappa(grid.x[i], grid.x[j]) * grid.mass[j];

  std::vector<std::size_t> cont;  // Gauss nodes; du = 0 marks the atom or a degenerate law
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (grid.du[j] > 0.0) cont.push_back(j);
  if (!diagonal_kink || cont.size() < 2) return w;

  const std::size_t n = cont.size();
  const double span = std::log(grid.x_max);
  std::vector<double> u(n), rho(n), lambda(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t j = cont[a];
    u[a] = std::log(grid.x[j]);
    rho[a] = grid.mass[j] / grid.du[j];
    // barycentric weights of the Gauss-Legendre nodes
    const double t = 2.0 * u[a] / span - 1.0;
    const double omega = 2.0 * grid.du[j] / span;
    lambda[a] = (a % 2 ? -1.0 : 1.0) * std::sqrt((1.0 - t * t) * omega);
  }

  const auto sub = gauss_legendre(static_cast<int>(n));
  std::vector<double> basis(n);
  auto interpolation_basis = [&](double v) {
    double denom = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double d = v - u[a];
      if (d == 0.0) {
        std::fill(basis.begin(), basis.end(), 0.0);
        basis[a] = 1.0;
        return;
      }
      basis[a] = lambda[a] / d;
      denom += basis[a];
    }
    for (auto& b : basis) b /= denom;
  };

  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = cont[a];
    std::vector<double> row(n, 0.0);
    for (auto [lo, hi] : {std::pair{0.0, u[a]}, std::pair{u[a], span}}) {
      const double half = 0.5 * (hi - lo);
      if (half <= 0.0) continue;
      for (std::size_t s = 0; s < sub.nodes.size(); ++s) {
        const double v = lo + half * (sub.nodes[s] + 1.0);
        const double kv = kappa(grid.x[i], std::exp(v)) * half * sub.weights[s];
        interpolation_basis(v);
        for (std::size_t b = 0; b < n; ++b) row[b] += kv * basis[b];
      }
    }
    for (std::size_t b = 0; b < n; ++b) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cont[b])) = row[b] * rho[b];
  }
  return w;
}

}  // namespace kbrg
