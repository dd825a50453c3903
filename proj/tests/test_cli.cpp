#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

fs::path workdir(const std::string& name) {
  const auto dir = fs::current_path() / ("cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs the tool with stdout/stderr captured in <dir>/log.txt; returns the exit code.
int run(const fs::path& dir, const std::string& args) {
  const std::string cmd = std::string(KBRG_CLI) + " " + args + " --out " + dir.string() + " > " +
                          (dir / "log.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> numeric_rows(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Cli, SampleIsDeterministic) {
  const auto a = workdir("sample_a");
  const auto b = workdir("sample_b");
  const std::string args = "sample --n 120 --trials 2 --threads 2 --seed 99";
  ASSERT_EQ(run(a, args), 0) << slurp(a / "log.txt");
  ASSERT_EQ(run(b, args), 0);
  for (const char* f : {"eigenvalues_trial0000.csv", "eigenvalues_trial0001.csv"}) {
    ASSERT_TRUE(fs::exists(a / f));
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_NE(slurp(a / "eigenvalues_trial0000.csv"), slurp(a / "eigenvalues_trial0001.csv"));
  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  EXPECT_EQ(manifest["seeds"].size(), 2u);
  EXPECT_EQ(manifest["config"]["seed"], "99");
}

TEST(Cli, ConfigFileAndOverridePrecedence) {
  const auto dir = workdir("config");
  std::ofstream(dir / "run.cfg") << "n = 40\nseed = 5\n";
  ASSERT_EQ(run(dir, "sample --config " + (dir / "run.cfg").string() + " --seed 6"), 0) << slurp(dir / "log.txt");
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["config"]["n"], "40");
  EXPECT_EQ(manifest["config"]["seed"], "6");
  EXPECT_EQ(numeric_rows(dir / "eigenvalues_trial0000.csv").size(), 40u);
}

TEST(Cli, RejectsZeroTrials) {
  const auto dir = workdir("trials0");
  EXPECT_EQ(run(dir, "sample --trials 0"), 2);
  EXPECT_NE(slurp(dir / "log.txt").find("trials"), std::string::npos);
}

TEST(Cli, RejectsEmpiricalMomentsBeyondOrderEight) {
  const auto dir = workdir("k5");
  EXPECT_EQ(run(dir, "moments --k_max 5 --trunc_m 10"), 2);
}

TEST(Cli, MomentsReportTheClosedFormValue) {
  const auto dir = workdir("moments");
  ASSERT_EQ(run(dir, "moments --k_max 1 --empirical false"), 0) << slurp(dir / "log.txt");
  const auto text = slurp(dir / "moments.csv");
  EXPECT_NE(text.find("2.24999"), std::string::npos) << text;
}

TEST(Cli, StieltjesTrivialKernelAtI) {
  const auto dir = workdir("stieltjes");
  ASSERT_EQ(run(dir, "stieltjes --kernel trivial --z 0:1"), 0) << slurp(dir / "log.txt");
  const auto rows = numeric_rows(dir / "transform.csv");
  ASSERT_EQ(rows.size(), 1u);
  // semicircle: S(i) = i (sqrt 5 - 1) / 2
  EXPECT_NEAR(rows[0][2], 0.0, 1e-9);
  EXPECT_NEAR(rows[0][3], (std::sqrt(5.0) - 1.0) / 2.0, 1e-8);
}

TEST(Cli, DensityIsSymmetric) {
  const auto dir = workdir("density");
  ASSERT_EQ(run(dir, "density --x_min -3 --x_max 3 --x_count 25 --grid_points 96"), 0) << slurp(dir / "log.txt");
  const auto rows = numeric_rows(dir / "density.csv");
  ASSERT_EQ(rows.size(), 25u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i][0], -rows[rows.size() - 1 - i][0], 1e-12);
    EXPECT_NEAR(rows[i][1], rows[rows.size() - 1 - i][1], 1e-7);
    EXPECT_GE(rows[i][1], 0.0);
  }
}

TEST(Cli, TailRefusesSigmaOtherThanOne) {
  const auto dir = workdir("tail");
  EXPECT_EQ(run(dir, "tail --sigma 0.5"), 2);
}

TEST(Cli, ValidateNegativeControlFails) {
  // inflating c_N shrinks every entry, so the second moment must come out wrong
  const auto dir = workdir("validate_neg");
  EXPECT_EQ(run(dir, "validate --profile quick --criteria 2 --cn_multiplier 4"), 1) << slurp(dir / "log.txt");
  const auto report = nlohmann::json::parse(slurp(dir / "validate.json"));
  EXPECT_FALSE(report["passed"].get<bool>());
  ASSERT_EQ(report["criteria"].size(), 1u);
  EXPECT_EQ(report["criteria"][0]["id"], 2);
  EXPECT_FALSE(report["criteria"][0]["passed"].get<bool>());
}

TEST(Cli, ValidateQuickSecondMomentPasses) {
  const auto dir = workdir("validate_pos");
  EXPECT_EQ(run(dir, "validate --profile quick --criteria 2"), 0) << slurp(dir / "log.txt");
}

TEST(Cli, UnknownOptionIsAUsageError) {
  const auto dir = workdir("usage");
  EXPECT_NE(run(dir, "sample --no_such_key 1"), 0);
}
