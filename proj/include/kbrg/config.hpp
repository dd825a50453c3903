#pragma once

// Flat key = value run configuration shared by every subcommand.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kbrg/ensembles.hpp"
#include "kbrg/model.hpp"

namespace kbrg {

struct RunConfig {
  ModelParams model;
  std::uint64_t seed = 20240601;
  std::uint64_t trials = 1;
  unsigned threads = 1;
  std::filesystem::path out = "kbrg_out";
  std::size_t max_order = 4096;

  MatrixKind matrix = MatrixKind::Adjacency;
  MatrixKind compare_matrix = MatrixKind::Gaussianized;
  double compare_trunc_m = 20.0;
  bool dump_matrices = false;

  // moments
  int k_max = 4;
  std::string law = "auto";  // auto | untruncated | hard | conditional | degenerate
  std::string method = "tree-quadrature";
  std::uint64_t mc_trials = 100000;
  bool empirical = true;

  // stieltjes / density
  std::string z = "0:1";  // comma-separated re:im pairs
  int grid_points = 256;
  double eta = 1e-2;
  double x_min = -6.0;
  double x_max = 6.0;
  int x_count = 241;
  double tolerance = 1e-10;

  // tail
  double tail_x_min = 1.5;
  double tail_quantile = 0.999;
  int tail_points = 40;

  // validate
  std::string profile = "desk";  // desk | quick
  std::string criteria;          // comma-separated ids, empty = all
  double cn_multiplier = 1.0;

  EnsembleOptions ensemble_options() const;
};

/// Every accepted key, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key; throws ParameterError for unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines; blank lines and '#' comments are ignored.
void load_config_file(RunConfig& config, const std::filesystem::path& path);
void load_config_text(RunConfig& config, std::string_view text, std::string_view origin = "<text>");

/// Canonical key -> value rendering (round-trips through apply_setting).
std::map<std::string, std::string> config_echo(const RunConfig& config);

/// Validation shared by the commands: trials >= 1, threads >= 1, model
/// invariants.
void validate_run_config(const RunConfig& config);

std::string format_double(double v);

}  // namespace kbrg
