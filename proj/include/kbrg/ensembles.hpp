#pragma once

// Random matrix ensembles: the scaled KBRG adjacency and its truncated,
// centred, Gaussianized and geometry-free relatives, plus the diagonal-
// Wigner-diagonal comparator used for the sigma = 1 identification.

#include <cstdint>
#include <filesystem>
#include <string_view>

#include <Eigen/Dense>

#include "kbrg/model.hpp"

namespace kbrg {

enum class MatrixKind {
  Adjacency,           // A_N = adjacency / sqrt(c_N)
  TruncatedAdjacency,  // A_{N,m}: same with hard-truncated weights
  Centred,             // A_{N,m} - E^W[A_{N,m}]
  Gaussianized,        // sqrt(p(1-p)/c_N) G
  SimplifiedGaussian,  // sqrt(r/c_N) G
  GeometryFree,        // n^{-1/2} sqrt(kappa(W_i, W_j)) G
  DiagWignerDiag,      // P G P, P = diag(sqrt W)
  Wigner,              // G with entry variance 1/n
};

std::string_view to_string(MatrixKind kind);
MatrixKind parse_matrix_kind(std::string_view name);

struct EnsembleOptions {
  std::size_t max_order = 4096;
  /// Multiplies c_N before use. Only for negative-control runs.
  double scaling_multiplier = 1.0;
};

struct SymmetricMatrixSample {
  Eigen::MatrixXd entries;
  MatrixKind kind = MatrixKind::Adjacency;
  ModelParams params;
  std::uint64_t weight_seed = 0;
  std::uint64_t edge_seed = 0;

  std::size_t order() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Scaled adjacency. Uses hard-truncated weights (kind TruncatedAdjacency)
/// when params.trunc_m is finite. One uniform per pair i < j, row-major.
SymmetricMatrixSample sample_adjacency(const ModelParams& params, std::uint64_t weight_seed,
                                       std::uint64_t edge_seed, const EnsembleOptions& opts = {});

/// Centred adjacency (Bernoulli(p) - p) / sqrt(c_N); m = inf allowed.
SymmetricMatrixSample sample_centred(const ModelParams& params, std::uint64_t weight_seed,
                                     std::uint64_t edge_seed, const EnsembleOptions& opts = {});

/// Gaussianized matrix with entry variance p^m (1 - p^m) / c_N, or the
/// simplified variance r^m / c_N when `simplified` is set. Both variants
/// read the same Gaussian G_{i,j} for a given gauss_seed.
SymmetricMatrixSample sample_gaussianized(const ModelParams& params, std::uint64_t weight_seed,
                                          std::uint64_t gauss_seed, bool simplified,
                                          const EnsembleOptions& opts = {});

SymmetricMatrixSample sample_geometry_free(const ModelParams& params, std::uint64_t weight_seed,
                                           std::uint64_t gauss_seed, const EnsembleOptions& opts = {});

SymmetricMatrixSample sample_diag_wigner_diag(const ModelParams& params, std::uint64_t weight_seed,
                                              std::uint64_t gauss_seed, const EnsembleOptions& opts = {});

/// Real symmetric Gaussian Wigner matrix, zero diagonal, variance 1/n.
SymmetricMatrixSample sample_wigner(const ModelParams& params, std::uint64_t gauss_seed,
                                    const EnsembleOptions& opts = {});

/// Dispatch on kind; `second_seed` is the edge seed or Gaussian seed.
SymmetricMatrixSample sample_matrix(MatrixKind kind, const ModelParams& params,
                                    std::uint64_t weight_seed, std::uint64_t second_seed,
                                    const EnsembleOptions& opts = {});

/// Debug dump: 16-byte header (8-byte magic "KBRGMAT1", little-endian
/// uint64 order) then the upper triangle, row-major, as little-endian doubles.
void write_matrix_dump(const SymmetricMatrixSample& sample, const std::filesystem::path& path);
Eigen::MatrixXd read_matrix_dump(const std::filesystem::path& path);

}  // namespace kbrg
