#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "kbrg/ensembles.hpp"
#include "kbrg/errors.hpp"
#include "kbrg/spectra.hpp"

using namespace kbrg;

namespace {

ModelParams small() {
  ModelParams p;
  p.n = 80;
  p.alpha = 0.5;
  p.tau = 4.0;
  return p;
}

}  // namespace

TEST(Ensembles, EveryKindIsSymmetricWithZeroDiagonal) {
  for (auto kind : {MatrixKind::Adjacency, MatrixKind::TruncatedAdjacency, MatrixKind::Centred,
                    MatrixKind::Gaussianized, MatrixKind::SimplifiedGaussian, MatrixKind::GeometryFree,
                    MatrixKind::DiagWignerDiag, MatrixKind::Wigner}) {
    auto p = small();
    if (kind != MatrixKind::Adjacency) p.trunc_m = 10.0;
    const auto s = sample_matrix(kind, p, 11, 12);
    ASSERT_EQ(s.order(), 80u) << to_string(kind);
    EXPECT_LT((s.entries - s.entries.transpose()).cwiseAbs().maxCoeff(), 1e-15) << to_string(kind);
    if (kind != MatrixKind::DiagWignerDiag) {
      EXPECT_EQ(s.entries.diagonal().cwiseAbs().maxCoeff(), 0.0) << to_string(kind);
    }
    EXPECT_EQ(parse_matrix_kind(to_string(kind)), kind);
  }
}

TEST(Ensembles, AdjacencyEntriesAreScaledBits) {
  const auto p = small();
  const auto s = sample_adjacency(p, 1, 2);
  const double scale = 1.0 / std::sqrt(scaling_constant(p));
  for (Eigen::Index i = 0; i < s.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < s.entries.cols(); ++j) {
      const double v = s.entries(i, j);
      EXPECT_TRUE(v == 0.0 || std::abs(v - scale) < 1e-15);
    }
}

TEST(Ensembles, CompleteGraphSpectrum) {
  // alpha = 0 and kappa >= 1 force every p_ij = 1: A = (J - I) / sqrt(n - 1)
  auto p = small();
  p.n = 64;
  p.alpha = 0.0;
  const auto ev = eigenvalues(sample_adjacency(p, 3, 4)).eigenvalues;
  EXPECT_NEAR(ev.back(), std::sqrt(63.0), 1e-10);
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) EXPECT_NEAR(ev[i], -1.0 / std::sqrt(63.0), 1e-10);
}

TEST(Ensembles, DeterministicForFixedSeeds) {
  const auto p = small();
  const auto a = sample_adjacency(p, 5, 6);
  const auto b = sample_adjacency(p, 5, 6);
  const auto c = sample_adjacency(p, 5, 7);
  EXPECT_EQ(a.entries, b.entries);
  EXPECT_NE(a.entries, c.entries);
}

TEST(Ensembles, GaussianVariantsShareTheGaussian) {
  auto p = small();
  p.trunc_m = 10.0;
  const auto full = sample_gaussianized(p, 1, 2, false);
  const auto simple = sample_gaussianized(p, 1, 2, true);
  // entries differ only through the variance profile, so the signs agree
  for (Eigen::Index i = 0; i < 80; ++i)
    for (Eigen::Index j = 0; j < 80; ++j)
      if (full.entries(i, j) != 0.0 && simple.entries(i, j) != 0.0) {
        EXPECT_EQ(std::signbit(full.entries(i, j)), std::signbit(simple.entries(i, j)));
      }
}

TEST(Ensembles, WignerVariance) {
  ModelParams p;
  p.n = 400;
  const auto w = sample_wigner(p, 9);
  const double off = w.entries.squaredNorm() / (400.0 * 399.0);
  EXPECT_NEAR(off, 1.0 / 400.0, 0.05 / 400.0);
}

TEST(Ensembles, OrderCapRaisesResourceError) {
  auto p = small();
  p.n = 100;
  p.d = 2;
  EnsembleOptions o;
  o.max_order = 4096;
  EXPECT_THROW(sample_adjacency(p, 1, 2, o), ResourceError);
}

TEST(Ensembles, DumpRoundTrip) {
  const auto s = sample_gaussianized([] {
    auto p = small();
    p.trunc_m = 10.0;
    return p;
  }(), 3, 4, false);
  const auto path = std::filesystem::temp_directory_path() / "kbrg_dump_roundtrip.bin";
  write_matrix_dump(s, path);
  EXPECT_EQ(std::filesystem::file_size(path), 16 + 8 * (80u * 81u / 2));
  const auto back = read_matrix_dump(path);
  EXPECT_EQ(back, s.entries);
  std::filesystem::remove(path);
}
