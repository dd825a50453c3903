// Acceptance runner: one [PASS]/[FAIL] line per criterion at the pinned
// tolerances, followed by cross-checks of the suite's reference values
// against the independent oracles in oracles.hpp.
//
//   kbrg_acceptance [--profile desk|quick] [--threads T] [--seed S]
//                   [--criteria 1,2,...] [--expect-fail 5,...] [--scratch DIR]
//
// Exit status is 0 when every criterion passes, except those listed with
// --expect-fail, and every oracle cross-check agrees. An expected failure
// is still printed as [FAIL]; if it passes, a note says so.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kbrg/acceptance.hpp"
#include "kbrg/errors.hpp"
#include "oracles.hpp"

namespace {

struct Args {
  kbrg::AcceptanceOptions opts;
  std::vector<int> expect_fail;
};

Args parse(int argc, char** argv) {
  Args a;
  for (int i = 1; i < argc; ++i) {
    const std::string key = argv[i];
    if (i + 1 >= argc) throw kbrg::ParameterError("missing value for " + key);
    const std::string value = argv[++i];
    if (key == "--profile") a.opts.profile = value;
    else if (key == "--threads") a.opts.threads = static_cast<unsigned>(std::stoul(value));
    else if (key == "--seed") a.opts.seed = std::stoull(value, nullptr, 0);
    else if (key == "--criteria") a.opts.only = kbrg::parse_criteria_list(value);
    else if (key == "--expect-fail") a.expect_fail = kbrg::parse_criteria_list(value);
    else if (key == "--scratch") a.opts.scratch_dir = value;
    else throw kbrg::ParameterError("unknown option " + key);
  }
  return a;
}

double metric(const kbrg::CriterionResult& r, const std::string& key) {
  const auto it = r.metrics.find(key);
  return it == r.metrics.end() ? std::nan("") : it->second;
}

double hard_second_moment(double tau, double sigma, double m) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto f = [tau](double x) { return (tau - 1) * std::pow(x, -tau); };
  auto outer = [&](double y) {
    auto inner = [&](double x) { return x * f(x); };
    return 2.0 * std::pow(y, sigma) * f(y) * GK::integrate(inner, y, m, 15, 1e-13);
  };
  return GK::integrate(outer, 1.0, m, 15, 1e-12);
}

struct Check {
  std::string what;
  double got;
  double want;
  double rel_tol;
  bool ok() const { return std::abs(got - want) <= rel_tol * std::abs(want); }
};

}  // namespace

int main(int argc, char** argv) {
  Args args;
  try {
    args = parse(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "kbrg_acceptance: " << e.what() << '\n';
    return 2;
  }
  const auto results = kbrg::run_acceptance(args.opts, &std::cerr);

  bool ok = true;
  std::vector<Check> checks;
  for (const auto& r : results) {
    std::cout << kbrg::format_result_line(r) << '\n';
    const bool expected = std::find(args.expect_fail.begin(), args.expect_fail.end(), r.id) != args.expect_fail.end();
    if (expected && r.passed) std::cout << "  note: criterion " << r.id << " was expected to fail but passed\n";
    if (expected && !r.passed) std::cout << "  note: criterion " << r.id << " is a known failure\n";
    if (!r.passed && !expected) ok = false;

    if (r.id == 2) {
      const double ref = oracle::second_moment_2d(4.0, 1.0);
      checks.push_back({"M2 closed form vs 2-D quadrature", metric(r, "theory"), ref, 1e-8});
      checks.push_back({"M2 tree quadrature vs 2-D quadrature", metric(r, "tree_quadrature"), ref, 1e-6});
    }
    if (r.id == 3) {
      for (double sigma : {0.5, 1.0}) {
        const std::string key = sigma == 1.0 ? "M2_sigma1_tree" : "M2_sigma0.5_tree";
        checks.push_back({"hard-truncated M2 (sigma " + std::to_string(sigma).substr(0, 3) + ") vs 2-D quadrature",
                          metric(r, key), hard_second_moment(4.0, sigma, 20.0), 1e-8});
      }
    }
    if (r.id == 1) {
      checks.push_back({"partitions checked vs sum of (2k-1)!!, k<=5", metric(r, "partitions_checked"),
                        1.0 + 3.0 + 15.0 + 105.0 + 945.0, 0.0});
    }
  }
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] oracle %s: %.12g vs %.12g", c.ok() ? "PASS" : "FAIL", c.what.c_str(),
                  c.got, c.want);
    std::cout << line << '\n';
    ok = ok && c.ok();
  }
  std::cout << (ok ? "acceptance: OK" : "acceptance: FAILED") << std::endl;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
