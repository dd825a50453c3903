#pragma once

// Subcommands of the kbrg tool. Each writes its CSVs and a manifest into
// config.out and returns the process exit code.

#include <complex>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "kbrg/config.hpp"
#include "kbrg/spectra.hpp"

namespace kbrg {

int cmd_sample(const RunConfig& config, std::ostream& log);
int cmd_esd(const RunConfig& config, std::ostream& log);
int cmd_moments(const RunConfig& config, std::ostream& log);
int cmd_stieltjes(const RunConfig& config, std::ostream& log);
int cmd_density(const RunConfig& config, std::ostream& log);
int cmd_tail(const RunConfig& config, std::ostream& log);
int cmd_compare(const RunConfig& config, std::ostream& log);
int cmd_validate(const RunConfig& config, std::ostream& log);

int run_command(std::string_view name, const RunConfig& config, std::ostream& log);
const std::vector<std::string_view>& command_names();

/// Spectra of `config.trials` independent matrices of kind config.matrix;
/// trial t uses derive_seed(seed, t, 0) for weights and
/// derive_seed(seed, t, 1) for edges / Gaussians.
std::vector<SpectralSample> sample_spectra(const RunConfig& config);

struct TailReport {
  std::vector<SurvivalPoint> table;
  TailFit fit;
  double x_hi = 0.0;
  double target_slope = 0.0;      // -2 (tau - 1)
  double target_intercept = 0.0;  // log(m_1^{tau-1} / 2)
};

/// Survival table on a log grid over [x_min, quantile(q)] and its fit.
TailReport tail_analysis(const EmpiricalMeasure& pooled, double tau, double x_min, double q, int points);

/// "re:im,re:im" -> points; Im must be positive.
std::vector<std::complex<double>> parse_z_list(std::string_view text);

}  // namespace kbrg
