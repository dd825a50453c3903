#include "kbrg/ensembles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "kbrg/errors.hpp"
#include "kbrg/rng.hpp"

namespace kbrg {

namespace {

constexpr std::array<std::pair<MatrixKind, std::string_view>, 8> kKindNames{{
    {MatrixKind::Adjacency, "adjacency"},
    {MatrixKind::TruncatedAdjacency, "truncated"},
    {MatrixKind::Centred, "centred"},
    {MatrixKind::Gaussianized, "gaussianized"},
    {MatrixKind::SimplifiedGaussian, "simplified"},
    {MatrixKind::GeometryFree, "geometryfree"},
    {MatrixKind::DiagWignerDiag, "pgp"},
    {MatrixKind::Wigner, "wigner"},
}};

void check_order(const ModelParams& params, const EnsembleOptions& opts) {
  params.validate();
  const std::size_t order = params.order();
  if (order > opts.max_order)
    throw ResourceError("matrix order " + std::to_string(order) + " exceeds the configured cap " +
                        std::to_string(opts.max_order));
  if (order < 2) throw ParameterError("matrix order must be at least 2");
}

double effective_scaling(const ModelParams& params, const EnsembleOptions& opts) {
  return scaling_constant(params) * opts.scaling_multiplier;
}

// Visits every pair i < j in row-major order with its running pair index and
// the kernel-over-distance ratio r_ij (uncapped).
template <typename Visit>
void for_each_pair(const ModelParams& params, const WeightVector& w, Visit&& visit) {
  const std::size_t order = params.order();
  const auto table = distance_power_table(params);
  std::uint64_t pair = 0;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j, ++pair) {
      const int dist = index_distance(i, j, params.n, params.d);
      const double r = kernel_value(params, w.values[i], w.values[j]) * table[static_cast<std::size_t>(dist)];
      visit(i, j, pair, r);
    }
  }
}

SymmetricMatrixSample make_sample(MatrixKind kind, const ModelParams& params, std::uint64_t ws,
                                  std::uint64_t es) {
  SymmetricMatrixSample s;
  s.kind = kind;
  s.params = params;
  s.weight_seed = ws;
  s.edge_seed = es;
  const auto order = static_cast<Eigen::Index>(params.order());
  s.entries = Eigen::MatrixXd::Zero(order, order);
  return s;
}

void set_symmetric(Eigen::MatrixXd& a, std::size_t i, std::size_t j, double value) {
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  a(ii, jj) = value;
  a(jj, ii) = value;
}

}  // namespace

std::string_view to_string(MatrixKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "adjacency";
}

MatrixKind parse_matrix_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  throw ParameterError("unknown matrix kind '" + std::string(name) +
                       "' (expected adjacency|truncated|centred|gaussianized|simplified|geometryfree|pgp|wigner)");
}

SymmetricMatrixSample sample_adjacency(const ModelParams& params, std::uint64_t weight_seed,
                                       std::uint64_t edge_seed, const EnsembleOptions& opts) {
  check_order(params, opts);
  const auto kind = params.truncated() ? MatrixKind::TruncatedAdjacency : MatrixKind::Adjacency;
  auto s = make_sample(kind, params, weight_seed, edge_seed);
  const auto w = sample_weights(params, weight_seed);
  const double entry = 1.0 / std::sqrt(effective_scaling(params, opts));
  const CounterRng rng(edge_seed);
  for_each_pair(params, w, [&](std::size_t i, std::size_t j, std::uint64_t pair, double r) {
    const double p = std::min(r, 1.0);
    if (rng.uniform(pair) <= p && p > 0.0) set_symmetric(s.entries, i, j, entry);
  });
  return s;
}

SymmetricMatrixSample sample_centred(const ModelParams& params, std::uint64_t weight_seed,
                                     std::uint64_t edge_seed, const EnsembleOptions& opts) {
  check_order(params, opts);
  auto s = make_sample(MatrixKind::Centred, params, weight_seed, edge_seed);
  const auto w = sample_weights(params, weight_seed);
  const double scale = 1.0 / std::sqrt(effective_scaling(params, opts));
  const CounterRng rng(edge_seed);
  for_each_pair(params, w, [&](std::size_t i, std::size_t j, std::uint64_t pair, double r) {
    const double p = std::min(r, 1.0);
    const double edge = (rng.uniform(pair) <= p && p > 0.0) ? 1.0 : 0.0;
    set_symmetric(s.entries, i, j, (edge - p) * scale);
  });
  return s;
}

SymmetricMatrixSample sample_gaussianized(const ModelParams& params, std::uint64_t weight_seed,
                                          std::uint64_t gauss_seed, bool simplified,
                                          const EnsembleOptions& opts) {
  check_order(params, opts);
  if (!params.truncated())
    throw ParameterError("Gaussianized ensembles require a finite truncation level trunc_m");
  const auto kind = simplified ? MatrixKind::SimplifiedGaussian : MatrixKind::Gaussianized;
  auto s = make_sample(kind, params, weight_seed, gauss_seed);
  const auto w = sample_weights(params, weight_seed);
  const double inv_c = 1.0 / effective_scaling(params, opts);
  const CounterRng rng(gauss_seed);
  for_each_pair(params, w, [&](std::size_t i, std::size_t j, std::uint64_t pair, double r) {
    double variance = r;
    if (!simplified) {
      const double p = std::min(r, 1.0);
      variance = p * (1.0 - p);
    }
    set_symmetric(s.entries, i, j, std::sqrt(variance * inv_c) * rng.normal(pair));
  });
  return s;
}

SymmetricMatrixSample sample_geometry_free(const ModelParams& params, std::uint64_t weight_seed,
                                           std::uint64_t gauss_seed, const EnsembleOptions& opts) {
  check_order(params, opts);
  auto s = make_sample(MatrixKind::GeometryFree, params, weight_seed, gauss_seed);
  const auto w = sample_weights(params, weight_seed);
  const std::size_t order = params.order();
  const double inv_n = 1.0 / static_cast<double>(order);
  const CounterRng rng(gauss_seed);
  std::uint64_t pair = 0;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i + 1; j < order; ++j, ++pair) {
      const double k = kernel_value(params, w.values[i], w.values[j]);
      set_symmetric(s.entries, i, j, std::sqrt(k * inv_n) * rng.normal(pair));
    }
  }
  return s;
}

SymmetricMatrixSample sample_wigner(const ModelParams& params, std::uint64_t gauss_seed,
                                    const EnsembleOptions& opts) {
  check_order(params, opts);
  auto s = make_sample(MatrixKind::Wigner, params, 0, gauss_seed);
  const std::size_t order = params.order();
  const double scale = 1.0 / std::sqrt(static_cast<double>(order));
  const CounterRng rng(gauss_seed);
  std::uint64_t pair = 0;
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = i + 1; j < order; ++j, ++pair)
      set_symmetric(s.entries, i, j, scale * rng.normal(pair));
  return s;
}

SymmetricMatrixSample sample_diag_wigner_diag(const ModelParams& params, std::uint64_t weight_seed,
                                              std::uint64_t gauss_seed, const EnsembleOptions& opts) {
  auto s = sample_wigner(params, gauss_seed, opts);
  s.kind = MatrixKind::DiagWignerDiag;
  s.weight_seed = weight_seed;
  const auto w = sample_weights(params, weight_seed);
  const std::size_t order = w.values.size();
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = i + 1; j < order; ++j) {
      const double g = s.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      set_symmetric(s.entries, i, j, g * std::sqrt(w.values[i] * w.values[j]));
    }
  return s;
}

SymmetricMatrixSample sample_matrix(MatrixKind kind, const ModelParams& params,
                                    std::uint64_t weight_seed, std::uint64_t second_seed,
                                    const EnsembleOptions& opts) {
  switch (kind) {
    case MatrixKind::Adjacency:
    case MatrixKind::TruncatedAdjacency: {
      ModelParams p = params;
      if (kind == MatrixKind::Adjacency) p.trunc_m = kUntruncated;
      if (kind == MatrixKind::TruncatedAdjacency && !p.truncated())
        throw ParameterError("truncated adjacency requires a finite trunc_m");
      return sample_adjacency(p, weight_seed, second_seed, opts);
    }
    case MatrixKind::Centred: return sample_centred(params, weight_seed, second_seed, opts);
    case MatrixKind::Gaussianized: return sample_gaussianized(params, weight_seed, second_seed, false, opts);
    case MatrixKind::SimplifiedGaussian: return sample_gaussianized(params, weight_seed, second_seed, true, opts);
    case MatrixKind::GeometryFree: return sample_geometry_free(params, weight_seed, second_seed, opts);
    case MatrixKind::DiagWignerDiag: return sample_diag_wigner_diag(params, weight_seed, second_seed, opts);
    case MatrixKind::Wigner: return sample_wigner(params, second_seed, opts);
  }
  throw ParameterError("unhandled matrix kind");
}

namespace {

constexpr char kMagic[8] = {'K', 'B', 'R', 'G', 'M', 'A', 'T', '1'};

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t out = 0;
    for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xFFu) << (8 * (7 - b));
    return out;
  }
  return v;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  v = to_little(v);
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  char buf[8];
  in.read(buf, 8);
  if (!in) throw DataError("truncated matrix dump");
  std::uint64_t v = 0;
  std::memcpy(&v, buf, 8);
  return to_little(v);
}

}  // namespace

void write_matrix_dump(const SymmetricMatrixSample& sample, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(kMagic, 8);
  const auto n = sample.entries.rows();
  put_u64(out, static_cast<std::uint64_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) put_u64(out, std::bit_cast<std::uint64_t>(sample.entries(i, j)));
  if (!out) throw DataError("failed writing " + path.string());
}

Eigen::MatrixXd read_matrix_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) throw DataError("bad matrix dump magic in " + path.string());
  const auto n = static_cast<Eigen::Index>(get_u64(in));
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = std::bit_cast<double>(get_u64(in));
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

}  // namespace kbrg
