#include "kbrg/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kbrg/errors.hpp"

namespace kbrg {

WeightGrid make_weight_grid(const ModelParams& params, LawVariant law, int points, double tail) {
  params.validate();
  if (points < 2) throw ParameterError("weight grid needs at least 2 points");
  ParetoLaw pl{params.tau, params.trunc_m, law};
  double x_max = 0.0;
  switch (law) {
    case LawVariant::Untruncated: {
      params.validate_untruncated_stieltjes();
      // both the mass and the first (1 v sigma) moment lose at most `tail`
      const double shape = params.tau - 1.0;
      const double p = std::max(1.0, params.sigma);
      x_max = std::max(untruncated_cutoff(params.tau, tail),
                       std::pow(tail * (shape - p) / shape, 1.0 / (p - shape)));
      break;
    }
    case LawVariant::HardTruncated:
    case LawVariant::Conditional:
      if (!params.truncated()) throw ParameterError("truncated weight law requested but trunc_m is infinite");
      break;
    case LawVariant::Degenerate: break;
  }
  auto grid = make_weight_quadrature(pl, points, x_max);
  if (const double atom = pl.atom_at_zero(); atom > 0.0) {
    grid.x.insert(grid.x.begin(), 0.0);
    grid.mass.insert(grid.mass.begin(), atom);
    grid.du.insert(grid.du.begin(), 0.0);
  }
  return grid;
}

WeightGrid make_weight_grid(const ModelParams& params, int points) {
  return make_weight_grid(params, params.truncated() ? LawVariant::Conditional : LawVariant::Untruncated, points);
}

double contraction_constant(double tau, double sigma, double beta) {
  return (tau - 1.0) * (1.0 / (beta - 2.0) + 1.0 / (beta - 1.0 - sigma));
}

namespace {

double beta_floor(const ModelParams& p) { return std::max(2.0, 1.0 + p.sigma); }

}  // namespace

double default_beta(const ModelParams& params) {
  const double lo = beta_floor(params);
  const double hi = params.tau - 1.0;
  // empty range (only reachable with a truncated law): any beta above the
  // floor gives a valid norm
  if (!(lo < hi)) return lo + 0.5;
  return 0.5 * (lo + hi);
}

double SolverConfig::resolved_beta(const ModelParams& params) const {
  return std::isnan(beta) ? default_beta(params) : beta;
}

double SolverConfig::resolved_eta_start(const ModelParams& params) const {
  if (eta_start > 0.0) return eta_start;
  return 2.0 * std::sqrt(contraction_constant(params.tau, params.sigma, resolved_beta(params)));
}

void SolverConfig::validate(const ModelParams& params) const {
  const double b = resolved_beta(params);
  const double lo = beta_floor(params);
  const double hi = params.tau - 1.0;
  std::ostringstream err;
  if (!(b > lo)) err << "beta must exceed 2 v (1+sigma) = " << lo << " (got " << b << "); ";
  if (lo < hi && !(b < hi)) err << "beta must be below tau-1 = " << hi << " (got " << b << "); ";
  if (!(tolerance > 0.0)) err << "tolerance must be positive; ";
  if (!(damping > 0.0 && damping <= 1.0)) err << "damping must lie in (0, 1]; ";
  if (!(damping_fallback > 0.0 && damping_fallback <= 1.0)) err << "damping fallback must lie in (0, 1]; ";
  if (!(continuation > 0.0 && continuation < 1.0)) err << "continuation factor must lie in (0, 1); ";
  if (!(eta_start >= 0.0)) err << "eta_start must be non-negative; ";
  if (!(eta_target > 0.0)) err << "eta_target must be positive; ";
  if (max_iterations < 1) err << "max_iterations must be positive; ";
  const auto msg = err.str();
  if (!msg.empty()) throw ParameterError("invalid solver configuration: " + msg);
}

FixedPointOperator::FixedPointOperator(WeightGrid grid, const ModelParams& params, double beta)
    : grid_(std::move(grid)), params_(params), beta_(beta) {
  const auto g = static_cast<Eigen::Index>(grid_.size());
  if (g == 0) throw ParameterError("empty weight grid");
  weighted_ = weighted_kernel_matrix(
      grid_, [this](double w, double v) { return kernel_value(params_, w, v); }, kernel_has_diagonal_kink(params_));
  nu_.resize(grid_.size());
  for (std::size_t j = 0; j < grid_.size(); ++j)
    nu_[j] = grid_.x[j] > 0.0 ? std::pow(grid_.x[j], 1.0 - beta_) * grid_.du[j] : 0.0;
  // a single-node (degenerate) grid carries no du; weight it by 1
  if (grid_.size() == 1 && nu_[0] == 0.0) nu_[0] = 1.0;
}

std::vector<Complex> FixedPointOperator::integral(const std::vector<Complex>& a) const {
  const auto g = weighted_.rows();
  if (static_cast<Eigen::Index>(a.size()) != g) throw ParameterError("field size does not match the grid");
  Eigen::VectorXd re(g);
  Eigen::VectorXd im(g);
  for (Eigen::Index j = 0; j < g; ++j) {
    re(j) = a[static_cast<std::size_t>(j)].real();
    im(j) = a[static_cast<std::size_t>(j)].imag();
  }
  const Eigen::VectorXd kr = weighted_ * re;
  const Eigen::VectorXd ki = weighted_ * im;
  std::vector<Complex> out(static_cast<std::size_t>(g));
  for (Eigen::Index i = 0; i < g; ++i) out[static_cast<std::size_t>(i)] = {kr(i), ki(i)};
  return out;
}

std::vector<Complex> FixedPointOperator::apply(Complex z, const std::vector<Complex>& a) const {
  if (!(z.imag() > 0.0)) throw DomainError("the recursion needs Im z > 0");
  auto out = integral(a);
  const double bound = 1.0 / z.imag() + 1e-12;
  for (auto& v : out) {
    const Complex den = z + v;
    if (std::abs(den) < 1e-14) throw NumericalError("denominator z + K a vanished");
    v = -1.0 / den;
    if (!(v.imag() > 0.0) || !(std::abs(v) <= bound))
      throw NumericalError("Herglotz bounds violated after applying T_z");
  }
  return out;
}

double FixedPointOperator::distance(const std::vector<Complex>& a, const std::vector<Complex>& b) const {
  double total = 0.0;
  for (std::size_t j = 0; j < nu_.size(); ++j) total += std::abs(a[j] - b[j]) * nu_[j];
  return total;
}

double FixedPointOperator::norm(const std::vector<Complex>& a) const {
  double total = 0.0;
  for (std::size_t j = 0; j < nu_.size(); ++j) total += std::abs(a[j]) * nu_[j];
  return total;
}

StieltjesField apply_T(const StieltjesField& field, const WeightGrid& grid, const ModelParams& params) {
  if (!(field.z.imag() > 0.0)) throw DomainError("apply_T needs Im z > 0");
  for (const auto& v : field.a)
    if (!(v.imag() > 0.0)) throw DomainError("apply_T needs Im a > 0 on input");
  const FixedPointOperator op(grid, params, default_beta(params));
  StieltjesField out;
  out.z = field.z;
  out.a = op.apply(field.z, field.a);
  out.residual = op.distance(out.a, field.a);
  out.iterations = field.iterations + 1;
  for (const auto& v : out.a) {
    out.min_imag = std::min(out.min_imag, v.imag());
    out.max_abs = std::max(out.max_abs, std::abs(v));
  }
  return out;
}

namespace {

void track_extremes(StieltjesField& f, const std::vector<Complex>& a) {
  for (const auto& v : a) {
    f.min_imag = std::min(f.min_imag, v.imag());
    f.max_abs = std::max(f.max_abs, std::abs(v));
  }
}

std::vector<Complex> initial_guess(std::size_t g, Complex z) { return std::vector<Complex>(g, -1.0 / z); }

}  // namespace

StieltjesField iterate_at(const FixedPointOperator& op, Complex z, std::vector<Complex> start,
                          const SolverConfig& config) {
  if (!(z.imag() > 0.0)) throw DomainError("the recursion needs Im z > 0");
  StieltjesField f;
  f.z = z;
  f.a = std::move(start);
  track_extremes(f, f.a);
  double theta = config.damping;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < config.max_iterations; ++it) {
    const auto t = op.apply(z, f.a);
    track_extremes(f, t);
    const double r = op.distance(t, f.a);
    f.residual = r;
    f.iterations = it + 1;
    if (config.record_history) f.residual_history.push_back(r);
    if (r > previous) theta = std::min(theta, config.damping_fallback);
    previous = r;
    for (std::size_t j = 0; j < t.size(); ++j) f.a[j] = (1.0 - theta) * f.a[j] + theta * t[j];
    track_extremes(f, f.a);
    if (r < config.tolerance) {
      f.converged = true;
      return f;
    }
  }
  return f;
}

StieltjesField solve_fixed_point(const FixedPointOperator& op, Complex z, const SolverConfig& config,
                                 const StieltjesField* warm_start) {
  config.validate(op.params());
  if (!(z.imag() > 0.0)) throw DomainError("solve_fixed_point needs Im z > 0");
  const std::size_t g = op.grid().size();
  if (warm_start) {
    if (warm_start->a.size() != g) throw ParameterError("warm start does not match the grid");
    auto f = iterate_at(op, z, warm_start->a, config);
    if (f.converged) return f;
  }
  const double eta_start = config.resolved_eta_start(op.params());
  if (z.imag() >= eta_start) {
    auto f = iterate_at(op, z, initial_guess(g, z), config);
    if (!f.converged)
      throw ConvergenceError("fixed point did not converge at z = (" + std::to_string(z.real()) + ", " +
                                 std::to_string(z.imag()) + ")",
                             f.residual);
    return f;
  }
  // walk eta down geometrically, warm-starting each stage
  double eta = eta_start;
  std::vector<Complex> a = initial_guess(g, Complex(z.real(), eta));
  StieltjesField history;
  history.min_imag = std::numeric_limits<double>::infinity();
  int total = 0;
  while (true) {
    const Complex zk(z.real(), eta);
    auto f = iterate_at(op, zk, std::move(a), config);
    total += f.iterations;
    history.min_imag = std::min(history.min_imag, f.min_imag);
    if (!f.converged)
      throw ConvergenceError("eta-continuation stalled at eta = " + std::to_string(eta) + " for Re z = " +
                                 std::to_string(z.real()),
                             f.residual);
    if (eta <= z.imag()) {
      f.iterations = total;
      f.min_imag = history.min_imag;
      // the bound 1/eta shrinks along the path; report the final stage only
      return f;
    }
    a = std::move(f.a);
    eta = std::max(eta * config.continuation, z.imag());
  }
}

StieltjesField solve_fixed_point(Complex z, const WeightGrid& grid, const ModelParams& params,
                                 const SolverConfig& config) {
  if (params.kernel != KernelKind::Trivial && grid.law.variant == LawVariant::Untruncated)
    params.validate_untruncated_stieltjes();
  const FixedPointOperator op(grid, params, config.resolved_beta(params));
  return solve_fixed_point(op, z, config);
}

Complex stieltjes_transform(const StieltjesField& field, const WeightGrid& grid) {
  if (!field.converged) throw StateError("Stieltjes transform of an unconverged field");
  if (field.a.size() != grid.size()) throw ParameterError("field size does not match the grid");
  Complex s = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) s += grid.mass[j] * field.a[j];
  return s;
}

std::vector<DensityPoint> density_by_inversion(const ModelParams& params, const WeightGrid& grid,
                                               const SolverConfig& config, const std::vector<double>& x_grid,
                                               double eta_final) {
  if (!(eta_final > 0.0)) throw ParameterError("density inversion needs eta_final > 0");
  if (params.kernel != KernelKind::Trivial && grid.law.variant == LawVariant::Untruncated)
    params.validate_untruncated_stieltjes();
  const FixedPointOperator op(grid, params, config.resolved_beta(params));
  std::vector<DensityPoint> out;
  std::vector<double> failed;
  StieltjesField previous;
  bool have_previous = false;
  for (double x : x_grid) {
    const Complex z(x, eta_final);
    try {
      // neighbouring abscissae have close fields; fall back to a full
      // eta-continuation when the warm start does not converge
      auto f = solve_fixed_point(op, z, config, have_previous ? &previous : nullptr);
      const Complex s = stieltjes_transform(f, grid);
      out.push_back({x, s.imag() / std::numbers::pi, eta_final, f.residual});
      previous = std::move(f);
      have_previous = true;
    } catch (const ConvergenceError&) {
      failed.push_back(x);
      have_previous = false;
    }
  }
  if (!failed.empty()) {
    std::ostringstream os;
    os << "density inversion did not converge at " << failed.size() << " abscissae:";
    for (double x : failed) os << ' ' << x;
    throw PartialResultError(os.str(), failed);
  }
  return out;
}

ContractionReport measure_contraction(const FixedPointOperator& op, Complex z, const SolverConfig& config,
                                      int iterations) {
  if (iterations < 1) throw ParameterError("contraction measurement needs at least one iteration");
  ContractionReport rep;
  rep.z = z;
  rep.c_tilde = contraction_constant(op.params().tau, op.params().sigma, op.beta());
  rep.bound = rep.c_tilde / (z.imag() * z.imag());
  const std::size_t g = op.grid().size();

  // plain residual ratios of a <- T a from -1/z
  auto a = initial_guess(g, z);
  double previous = -1.0;
  const double floor = 1e-13 * std::max(op.norm(a), 1e-300);
  for (int it = 0; it < 200 && static_cast<int>(rep.residual_ratios.size()) < iterations; ++it) {
    auto t = op.apply(z, a);
    const double r = op.distance(t, a);
    if (r < floor) break;
    if (previous > 0.0) rep.residual_ratios.push_back(r / previous);
    previous = r;
    a = std::move(t);
  }

  // perturbation quotients around the fixed point
  SolverConfig tight = config;
  tight.damping = 1.0;
  tight.tolerance = std::min(config.tolerance, 1e-13);
  const auto star = solve_fixed_point(op, z, tight);
  const auto t_star = op.apply(z, star.a);
  double min_im = std::numeric_limits<double>::infinity();
  for (const auto& v : star.a) min_im = std::min(min_im, v.imag());
  std::vector<Complex> delta(g);
  for (std::size_t j = 0; j < g; ++j)
    delta[j] = Complex(std::cos(1.0 + 0.7 * static_cast<double>(j)), std::sin(0.3 + 1.3 * static_cast<double>(j)));
  const double size = 1e-6 * min_im;
  auto rescale = [&](std::vector<Complex>& d) {
    double mx = 0.0;
    for (const auto& v : d) mx = std::max(mx, std::abs(v));
    for (auto& v : d) v *= size / mx;
  };
  rescale(delta);
  for (int it = 0; it < iterations; ++it) {
    std::vector<Complex> b(g);
    for (std::size_t j = 0; j < g; ++j) b[j] = star.a[j] + delta[j];
    const auto tb = op.apply(z, b);
    std::vector<Complex> image(g);
    for (std::size_t j = 0; j < g; ++j) image[j] = tb[j] - t_star[j];
    rep.lipschitz_quotients.push_back(op.norm(image) / op.norm(delta));
    rescale(image);
    delta = std::move(image);
  }
  return rep;
}

}  // namespace kbrg
