#include "kbrg/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "kbrg/acceptance.hpp"
#include "kbrg/errors.hpp"
#include "kbrg/io.hpp"
#include "kbrg/moments.hpp"
#include "kbrg/parallel.hpp"
#include "kbrg/rng.hpp"
#include "kbrg/stieltjes.hpp"

namespace kbrg {

namespace {

std::string fmt(double v) { return format_double(v); }

std::vector<TrialSeeds> trial_seeds(const RunConfig& c) {
  std::vector<TrialSeeds> s;
  for (std::uint64_t t = 0; t < c.trials; ++t) s.push_back({t, derive_seed(c.seed, t, 0), derive_seed(c.seed, t, 1)});
  return s;
}

RunManifest start_manifest(const RunConfig& c) {
  RunManifest m;
  m.config = config_echo(c);
  return m;
}

void check_order_cap(const RunConfig& c) {
  if (c.model.order() > c.max_order)
    throw ResourceError("N^d = " + std::to_string(c.model.order()) + " exceeds the cap max_order = " +
                        std::to_string(c.max_order));
}

std::string trial_name(std::string_view stem, std::uint64_t t, std::string_view ext) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04llu", static_cast<unsigned long long>(t));
  return std::string(stem) + "_trial" + buf + std::string(ext);
}

LawVariant resolve_law(const RunConfig& c, bool for_solver) {
  if (c.law != "auto") return parse_law(c.law);
  if (!c.model.truncated()) return LawVariant::Untruncated;
  return for_solver ? LawVariant::Conditional : LawVariant::HardTruncated;
}

std::vector<CsvRow> eigen_rows(const std::vector<double>& ev) {
  std::vector<CsvRow> rows;
  rows.reserve(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) rows.push_back({std::to_string(i), fmt(ev[i])});
  return rows;
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  s.tolerance = c.tolerance;
  s.eta_target = c.eta;
  return s;
}

}  // namespace

std::vector<std::complex<double>> parse_z_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParameterError("z point '" + item + "' must be written re:im");
    double re = 0.0;
    double im = 0.0;
    try {
      re = std::stod(item.substr(0, colon));
      im = std::stod(item.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw ParameterError("z point '" + item + "' is not numeric");
    }
    if (!(im > 0.0)) throw DomainError("z point '" + item + "' needs Im z > 0");
    out.emplace_back(re, im);
  }
  if (out.empty()) throw ParameterError("z list is empty");
  return out;
}

std::vector<SpectralSample> sample_spectra(const RunConfig& c) {
  validate_run_config(c);
  check_order_cap(c);
  const auto seeds = trial_seeds(c);
  const auto opts = c.ensemble_options();
  return run_trials(seeds.size(), c.threads, [&](std::size_t t) {
    return eigenvalues(sample_matrix(c.matrix, c.model, seeds[t].weight_seed, seeds[t].second_seed, opts));
  });
}

int cmd_sample(const RunConfig& c, std::ostream& log) {
  validate_run_config(c);
  check_order_cap(c);
  ensure_output_dir(c.out);
  const auto seeds = trial_seeds(c);
  const auto opts = c.ensemble_options();
  auto spectra = run_trials(seeds.size(), c.threads, [&](std::size_t t) {
    auto m = sample_matrix(c.matrix, c.model, seeds[t].weight_seed, seeds[t].second_seed, opts);
    if (c.dump_matrices) write_matrix_dump(m, c.out / trial_name("matrix", t, ".bin"));
    return eigenvalues(m);
  });
  auto manifest = start_manifest(c);
  manifest.seeds = seeds;
  for (std::size_t t = 0; t < spectra.size(); ++t) {
    const auto name = trial_name("eigenvalues", t, ".csv");
    write_csv(c.out / name, {"index", "lambda"}, eigen_rows(spectra[t].eigenvalues));
    manifest.outputs.emplace_back(name);
    if (c.dump_matrices) manifest.outputs.emplace_back(trial_name("matrix", t, ".bin"));
  }
  write_manifest(c.out, manifest);
  log << "sample: wrote " << spectra.size() << " eigenvalue files to " << c.out.string() << '\n';
  return 0;
}

int cmd_esd(const RunConfig& c, std::ostream& log) {
  ensure_output_dir(c.out);
  const auto spectra = sample_spectra(c);
  const auto pooled = EmpiricalMeasure::pooled(spectra);
  const std::vector<double> values(pooled.points().begin(), pooled.points().end());
  const auto edges = freedman_diaconis_edges(values);
  const auto h = histogram(values, edges);
  std::vector<CsvRow> rows;
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double width = h.edges[b + 1] - h.edges[b];
    const double density = static_cast<double>(h.counts[b]) / (static_cast<double>(values.size()) * width);
    rows.push_back({fmt(h.edges[b]), fmt(h.edges[b + 1]), std::to_string(h.counts[b]), fmt(density)});
  }
  write_csv(c.out / "esd_histogram.csv", {"left", "right", "count", "density"}, rows);
  write_csv(c.out / "eigenvalues_pooled.csv", {"index", "lambda"}, eigen_rows(values));
  std::vector<CsvRow> moments;
  for (int order = 2; order <= 8; order += 2) moments.push_back({std::to_string(order), fmt(empirical_moment(values, order))});
  write_csv(c.out / "moments.csv", {"order", "value"}, moments);
  auto manifest = start_manifest(c);
  manifest.seeds = trial_seeds(c);
  manifest.outputs = {"esd_histogram.csv", "eigenvalues_pooled.csv", "moments.csv"};
  write_manifest(c.out, manifest);
  log << "esd: pooled " << values.size() << " eigenvalues into " << h.counts.size() << " bins\n";
  return 0;
}

int cmd_moments(const RunConfig& c, std::ostream& log) {
  validate_run_config(c);
  if (c.k_max < 0) throw ParameterError("k_max must be non-negative");
  if (c.empirical && c.k_max > 4)
    throw ParameterError("empirical moment comparison supports k <= 4 (got k_max = " + std::to_string(c.k_max) + ")");
  const auto law = resolve_law(c, false);
  const auto method = parse_moment_method(c.method);
  MomentOptions mo;
  mo.mc_trials = c.mc_trials;
  mo.mc_seed = derive_seed(c.seed, 0, 7);
  for (int k = 0; k <= c.k_max; ++k) check_moment_finite(k, c.model, law);
  ensure_output_dir(c.out);
  std::vector<CsvRow> rows;
  for (int k = 0; k <= c.k_max; ++k) {
    const auto est = limiting_moment(k, c.model, law, method, mo);
    rows.push_back({std::to_string(k), fmt(est.value), std::string(to_string(method)), fmt(est.std_error)});
  }
  auto manifest = start_manifest(c);
  if (c.empirical) {
    check_order_cap(c);
    const auto spectra = sample_spectra(c);
    manifest.seeds = trial_seeds(c);
    for (int k = 0; k <= c.k_max; ++k) {
      std::vector<double> per;
      for (const auto& s : spectra) per.push_back(k == 0 ? 1.0 : empirical_moment(s, 2 * k));
      const double n = static_cast<double>(per.size());
      const double mean = std::accumulate(per.begin(), per.end(), 0.0) / n;
      double var = 0.0;
      for (double v : per) var += (v - mean) * (v - mean);
      const double se = per.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
      rows.push_back({std::to_string(k), fmt(mean), "empirical", fmt(se)});
    }
  }
  write_csv(c.out / "moments.csv", {"k", "moment", "method", "stderr"}, rows);
  manifest.outputs = {"moments.csv"};
  write_manifest(c.out, manifest);
  log << "moments: k = 0.." << c.k_max << " under the " << to_string(law) << " law\n";
  return 0;
}

int cmd_stieltjes(const RunConfig& c, std::ostream& log) {
  validate_run_config(c);
  const auto law = resolve_law(c, true);
  if (law == LawVariant::Untruncated && c.model.kernel != KernelKind::Trivial) c.model.validate_untruncated_stieltjes();
  const auto points = parse_z_list(c.z);
  const auto grid = make_weight_grid(c.model, law, c.grid_points);
  const auto cfg = solver_config(c);
  cfg.validate(c.model);
  const FixedPointOperator op(grid, c.model, cfg.resolved_beta(c.model));
  ensure_output_dir(c.out);
  const auto fields = run_trials(points.size(), c.threads, [&](std::size_t i) { return solve_fixed_point(op, points[i], cfg); });
  std::vector<CsvRow> rows;
  for (const auto& f : fields) {
    const auto s = stieltjes_transform(f, grid);
    rows.push_back({fmt(f.z.real()), fmt(f.z.imag()), fmt(s.real()), fmt(s.imag()), std::to_string(f.iterations),
                    fmt(f.residual)});
  }
  write_csv(c.out / "transform.csv", {"re_z", "im_z", "re_S", "im_S", "iters", "residual"}, rows);
  auto manifest = start_manifest(c);
  manifest.outputs = {"transform.csv"};
  write_manifest(c.out, manifest);
  log << "stieltjes: solved " << rows.size() << " points\n";
  return 0;
}

int cmd_density(const RunConfig& c, std::ostream& log) {
  validate_run_config(c);
  const auto law = resolve_law(c, true);
  if (law == LawVariant::Untruncated && c.model.kernel != KernelKind::Trivial) c.model.validate_untruncated_stieltjes();
  if (c.x_count < 2 || !(c.x_max > c.x_min)) throw ParameterError("density grid needs x_max > x_min and x_count >= 2");
  const auto grid = make_weight_grid(c.model, law, c.grid_points);
  const auto cfg = solver_config(c);
  cfg.validate(c.model);
  ensure_output_dir(c.out);
  const auto xs = linear_grid(c.x_min, c.x_max, static_cast<std::size_t>(c.x_count));
  const auto table = density_by_inversion(c.model, grid, cfg, xs, c.eta);
  std::vector<CsvRow> rows;
  for (const auto& p : table) rows.push_back({fmt(p.x), fmt(p.density), fmt(p.eta), fmt(p.residual)});
  write_csv(c.out / "density.csv", {"x", "density", "eta", "residual"}, rows);
  auto manifest = start_manifest(c);
  manifest.outputs = {"density.csv"};
  write_manifest(c.out, manifest);
  log << "density: " << rows.size() << " abscissae at eta = " << c.eta << '\n';
  return 0;
}

TailReport tail_analysis(const EmpiricalMeasure& pooled, double tau, double x_min, double q, int points) {
  if (pooled.size() < 100) throw DataError("tail analysis needs at least 100 pooled eigenvalues");
  if (points < 8) throw ParameterError("tail analysis needs at least 8 grid points");
  TailReport r;
  r.x_hi = quantile(pooled.points(), q);
  if (!(r.x_hi > x_min))
    throw DataError("quantile(" + fmt(q) + ") = " + fmt(r.x_hi) + " does not exceed x_min = " + fmt(x_min) +
                    "; too few eigenvalues in the tail");
  const auto grid = log_grid(x_min, r.x_hi, static_cast<std::size_t>(points));
  r.table = survival_function(pooled, grid);
  r.fit = tail_fit(r.table, x_min);
  const double m1 = (tau - 1.0) / (tau - 2.0);
  r.target_slope = -2.0 * (tau - 1.0);
  r.target_intercept = std::log(0.5 * std::pow(m1, tau - 1.0));
  return r;
}

int cmd_tail(const RunConfig& c, std::ostream& log) {
  validate_run_config(c);
  const bool product = c.model.kernel == KernelKind::Product ||
                       (c.model.kernel == KernelKind::Sigma && c.model.sigma == 1.0);
  if (!product) throw DomainError("tail analysis requires sigma = 1 (product kernel)");
  ensure_output_dir(c.out);
  const auto spectra = sample_spectra(c);
  const auto rep = tail_analysis(EmpiricalMeasure::pooled(spectra), c.model.tau, c.tail_x_min, c.tail_quantile,
                                 c.tail_points);
  std::vector<CsvRow> rows;
  for (const auto& p : rep.table) rows.push_back({fmt(p.x), fmt(p.survival)});
  write_csv(c.out / "survival.csv", {"x", "survival"}, rows);
  write_csv(c.out / "tail_fit.csv",
            {"slope", "intercept", "slope_stderr", "intercept_stderr", "points", "x_min", "x_max", "target_slope",
             "target_intercept"},
            {{fmt(rep.fit.slope), fmt(rep.fit.intercept), fmt(rep.fit.slope_stderr), fmt(rep.fit.intercept_stderr),
              std::to_string(rep.fit.points), fmt(c.tail_x_min), fmt(rep.x_hi), fmt(rep.target_slope),
              fmt(rep.target_intercept)}});
  auto manifest = start_manifest(c);
  manifest.seeds = trial_seeds(c);
  manifest.outputs = {"survival.csv", "tail_fit.csv"};
  write_manifest(c.out, manifest);
  log << "tail: slope " << rep.fit.slope << " (target " << rep.target_slope << "), intercept " << rep.fit.intercept
      << " (target " << rep.target_intercept << ")\n";
  return 0;
}

int cmd_compare(const RunConfig& c, std::ostream& log) {
  validate_run_config(c);
  check_order_cap(c);
  ensure_output_dir(c.out);
  ModelParams other = c.model;
  other.trunc_m = c.compare_trunc_m;
  other.validate();
  const auto opts = c.ensemble_options();
  struct Pair {
    std::vector<double> a;
    std::vector<double> b;
  };
  const auto pairs = run_trials(c.trials, c.threads, [&](std::size_t t) {
    const auto ws = derive_seed(c.seed, t, 0);
    Pair p;
    p.a = eigenvalues(sample_matrix(c.matrix, c.model, ws, derive_seed(c.seed, t, 1), opts)).eigenvalues;
    p.b = eigenvalues(sample_matrix(c.compare_matrix, other, ws, derive_seed(c.seed, t, 2), opts)).eigenvalues;
    return p;
  });
  std::vector<CsvRow> rows;
  std::vector<double> all_a;
  std::vector<double> all_b;
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const EmpiricalMeasure a(pairs[t].a);
    const EmpiricalMeasure b(pairs[t].b);
    rows.push_back({std::to_string(t), fmt(levy_distance(a, b)), fmt(ks_distance(a, b))});
    all_a.insert(all_a.end(), pairs[t].a.begin(), pairs[t].a.end());
    all_b.insert(all_b.end(), pairs[t].b.begin(), pairs[t].b.end());
  }
  const EmpiricalMeasure pa(all_a);
  const EmpiricalMeasure pb(all_b);
  rows.push_back({"pooled", fmt(levy_distance(pa, pb)), fmt(ks_distance(pa, pb))});
  write_csv(c.out / "compare.csv", {"trial", "levy", "ks"}, rows);
  auto manifest = start_manifest(c);
  manifest.seeds = trial_seeds(c);
  manifest.outputs = {"compare.csv"};
  write_manifest(c.out, manifest);
  log << "compare: " << to_string(c.matrix) << " vs " << to_string(c.compare_matrix) << ", pooled Levy "
      << rows.back()[1] << '\n';
  return 0;
}

int cmd_validate(const RunConfig& c, std::ostream& log) {
  if (c.threads < 1) throw ParameterError("threads must be >= 1");
  if (c.profile != "desk" && c.profile != "quick") throw ParameterError("profile must be desk or quick");
  AcceptanceOptions opts;
  opts.profile = c.profile;
  opts.seed = c.seed;
  opts.threads = c.threads;
  opts.cn_multiplier = c.cn_multiplier;
  opts.only = parse_criteria_list(c.criteria);
  ensure_output_dir(c.out);
  opts.scratch_dir = c.out / "determinism_scratch";
  const auto results = run_acceptance(opts, &log);
  bool all = true;
  for (const auto& r : results) {
    log << format_result_line(r) << '\n';
    all = all && r.passed;
  }
  std::ofstream(c.out / "validate.json") << acceptance_report_json(results);
  auto manifest = start_manifest(c);
  manifest.outputs = {"validate.json"};
  write_manifest(c.out, manifest);
  return all ? 0 : 1;
}

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = {"sample", "esd",  "moments", "stieltjes",
                                                      "density", "tail", "compare", "validate"};
  return names;
}

int run_command(std::string_view name, const RunConfig& config, std::ostream& log) {
  if (name == "sample") return cmd_sample(config, log);
  if (name == "esd") return cmd_esd(config, log);
  if (name == "moments") return cmd_moments(config, log);
  if (name == "stieltjes") return cmd_stieltjes(config, log);
  if (name == "density") return cmd_density(config, log);
  if (name == "tail") return cmd_tail(config, log);
  if (name == "compare") return cmd_compare(config, log);
  if (name == "validate") return cmd_validate(config, log);
  throw ParameterError("unknown command '" + std::string(name) + "'");
}

}  // namespace kbrg
