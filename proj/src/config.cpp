#include "kbrg/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kbrg/errors.hpp"

namespace kbrg {

EnsembleOptions RunConfig::ensemble_options() const {
  EnsembleOptions o;
  o.max_order = max_order;
  o.scaling_multiplier = cn_multiplier;
  return o;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "n", "d", "alpha", "tau", "sigma", "trunc_m", "kernel", "seed", "trials", "threads", "out",
      "max_order", "matrix", "compare_matrix", "compare_trunc_m", "dump_matrices", "k_max", "law",
      "method", "mc_trials", "empirical", "z", "grid_points", "eta", "x_min", "x_max", "x_count",
      "tolerance", "tail_x_min", "tail_quantile", "tail_points", "profile", "criteria", "cn_multiplier"};
  return keys;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
  throw ParameterError("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "' as " +
                       std::string(expected));
}

double to_double(std::string_view key, std::string_view v) {
  const auto s = trim(v);
  if (s == "inf" || s == "infinity") return kUntruncated;
  try {
    std::size_t pos = 0;
    const double out = std::stod(s, &pos);
    if (pos != s.size()) bad(key, v, "a number");
    return out;
  } catch (const std::logic_error&) {
    bad(key, v, "a number");
  }
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  const auto s = trim(v);
  Int out{};
  int base = 10;
  std::string_view digits = s;
  if (digits.starts_with("0x") || digits.starts_with("0X")) {
    base = 16;
    digits.remove_prefix(2);
  }
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out, base);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) bad(key, v, "an integer");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  const auto s = trim(v);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  bad(key, v, "a boolean");
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  const auto v = trim(value);
  if (key == "n") c.model.n = to_int<int>(key, v);
  else if (key == "d") c.model.d = to_int<int>(key, v);
  else if (key == "alpha") c.model.alpha = to_double(key, v);
  else if (key == "tau") c.model.tau = to_double(key, v);
  else if (key == "sigma") c.model.sigma = to_double(key, v);
  else if (key == "trunc_m") c.model.trunc_m = to_double(key, v);
  else if (key == "kernel") c.model.kernel = parse_kernel(v);
  else if (key == "seed") c.seed = to_int<std::uint64_t>(key, v);
  else if (key == "trials") c.trials = to_int<std::uint64_t>(key, v);
  else if (key == "threads") c.threads = to_int<unsigned>(key, v);
  else if (key == "out") c.out = v;
  else if (key == "max_order") c.max_order = to_int<std::size_t>(key, v);
  else if (key == "matrix") c.matrix = parse_matrix_kind(v);
  else if (key == "compare_matrix") c.compare_matrix = parse_matrix_kind(v);
  else if (key == "compare_trunc_m") c.compare_trunc_m = to_double(key, v);
  else if (key == "dump_matrices") c.dump_matrices = to_bool(key, v);
  else if (key == "k_max") c.k_max = to_int<int>(key, v);
  else if (key == "law") c.law = v;
  else if (key == "method") c.method = v;
  else if (key == "mc_trials") c.mc_trials = to_int<std::uint64_t>(key, v);
  else if (key == "empirical") c.empirical = to_bool(key, v);
  else if (key == "z") c.z = v;
  else if (key == "grid_points") c.grid_points = to_int<int>(key, v);
  else if (key == "eta") c.eta = to_double(key, v);
  else if (key == "x_min") c.x_min = to_double(key, v);
  else if (key == "x_max") c.x_max = to_double(key, v);
  else if (key == "x_count") c.x_count = to_int<int>(key, v);
  else if (key == "tolerance") c.tolerance = to_double(key, v);
  else if (key == "tail_x_min") c.tail_x_min = to_double(key, v);
  else if (key == "tail_quantile") c.tail_quantile = to_double(key, v);
  else if (key == "tail_points") c.tail_points = to_int<int>(key, v);
  else if (key == "profile") c.profile = v;
  else if (key == "criteria") c.criteria = v;
  else if (key == "cn_multiplier") c.cn_multiplier = to_double(key, v);
  else throw ParameterError("unknown config key '" + std::string(key) + "'");
}

void load_config_text(RunConfig& config, std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ParameterError(std::string(origin) + ":" + std::to_string(lineno) + ": expected 'key = value'");
    try {
      apply_setting(config, trim(std::string_view(body).substr(0, eq)), std::string_view(body).substr(eq + 1));
    } catch (const ParameterError& e) {
      throw ParameterError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  load_config_text(config, ss.str(), path.string());
}

std::map<std::string, std::string> config_echo(const RunConfig& c) {
  std::map<std::string, std::string> m;
  m["n"] = std::to_string(c.model.n);
  m["d"] = std::to_string(c.model.d);
  m["alpha"] = format_double(c.model.alpha);
  m["tau"] = format_double(c.model.tau);
  m["sigma"] = format_double(c.model.sigma);
  m["trunc_m"] = format_double(c.model.trunc_m);
  m["kernel"] = std::string(to_string(c.model.kernel));
  m["seed"] = std::to_string(c.seed);
  m["trials"] = std::to_string(c.trials);
  m["threads"] = std::to_string(c.threads);
  m["out"] = c.out.string();
  m["max_order"] = std::to_string(c.max_order);
  m["matrix"] = std::string(to_string(c.matrix));
  m["compare_matrix"] = std::string(to_string(c.compare_matrix));
  m["compare_trunc_m"] = format_double(c.compare_trunc_m);
  m["dump_matrices"] = c.dump_matrices ? "true" : "false";
  m["k_max"] = std::to_string(c.k_max);
  m["law"] = c.law;
  m["method"] = c.method;
  m["mc_trials"] = std::to_string(c.mc_trials);
  m["empirical"] = c.empirical ? "true" : "false";
  m["z"] = c.z;
  m["grid_points"] = std::to_string(c.grid_points);
  m["eta"] = format_double(c.eta);
  m["x_min"] = format_double(c.x_min);
  m["x_max"] = format_double(c.x_max);
  m["x_count"] = std::to_string(c.x_count);
  m["tolerance"] = format_double(c.tolerance);
  m["tail_x_min"] = format_double(c.tail_x_min);
  m["tail_quantile"] = format_double(c.tail_quantile);
  m["tail_points"] = std::to_string(c.tail_points);
  m["profile"] = c.profile;
  m["criteria"] = c.criteria;
  m["cn_multiplier"] = format_double(c.cn_multiplier);
  return m;
}

void validate_run_config(const RunConfig& c) {
  if (c.trials < 1) throw ParameterError("trials must be >= 1 (got " + std::to_string(c.trials) + ")");
  if (c.threads < 1) throw ParameterError("threads must be >= 1");
  if (!(c.cn_multiplier > 0.0)) throw ParameterError("cn_multiplier must be positive");
  c.model.validate();
}

}  // namespace kbrg
