#pragma once

// CSV output, content digests and the run manifest.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace kbrg {

inline constexpr const char* kVersion = "1.0.0";

using CsvRow = std::vector<std::string>;

/// Writes a header line and rows, comma-separated, '\n' line ends.
void write_csv(const std::filesystem::path& path, const CsvRow& header, const std::vector<CsvRow>& rows);

/// Reads a CSV written by write_csv; the first row is the header.
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct TrialSeeds {
  std::uint64_t trial = 0;
  std::uint64_t weight_seed = 0;
  std::uint64_t second_seed = 0;
};

struct RunManifest {
  std::map<std::string, std::string> config;
  std::string version = kVersion;
  std::string timestamp_utc;
  std::vector<TrialSeeds> seeds;
  std::vector<std::filesystem::path> outputs;  // relative to the output directory
};

/// ISO-8601 UTC timestamp, second resolution.
std::string utc_timestamp();

/// Hashes every listed output and writes <dir>/manifest.json.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

/// Creates the directory (and parents); throws ResourceError if it cannot
/// be created or written.
void ensure_output_dir(const std::filesystem::path& dir);

}  // namespace kbrg
