#include "kbrg/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "kbrg/errors.hpp"

namespace kbrg {

void write_csv(const std::filesystem::path& path, const CsvRow& header, const std::vector<CsvRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
  auto line = [&](const CsvRow& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  if (!out) throw ResourceError("write to " + path.string() + " failed");
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::vector<CsvRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    CsvRow row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw NumericalError("sha256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string() + " for hashing");
  std::stringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["config"] = manifest.config;
  j["version"] = manifest.version;
  j["timestamp_utc"] = manifest.timestamp_utc.empty() ? utc_timestamp() : manifest.timestamp_utc;
  j["seeds"] = nlohmann::ordered_json::array();
  for (const auto& s : manifest.seeds)
    j["seeds"].push_back({{"trial", s.trial}, {"weight_seed", s.weight_seed}, {"second_seed", s.second_seed}});
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& p : manifest.outputs)
    j["outputs"].push_back({{"path", p.generic_string()}, {"sha256", sha256_file(dir / p)}});
  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot write manifest in " + dir.string());
  out << j.dump(2) << '\n';
}

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw ResourceError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  const auto probe = dir / ".kbrg_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw ResourceError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

}  // namespace kbrg
