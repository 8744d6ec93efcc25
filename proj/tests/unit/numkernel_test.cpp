#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "opradius/errors.hpp"
#include "opradius/numkernel.hpp"
#include "test_util.hpp"

using namespace opradius;
using testutil::mat;
using testutil::code_of;
using testutil::max_abs;

namespace {

Matrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  const Matrix g = testutil::gaussian(n, n, seed);
  return 0.5 * (g + g.adjoint());
}

Matrix random_psd_rank(Eigen::Index n, Eigen::Index r, std::uint64_t seed) {
  const Matrix g = testutil::gaussian(n, r, seed);
  return g * g.adjoint();
}

TEST(MakeMatrix, RowMajorAndValidation) {
  const std::array<cplx, 4> e{cplx(1), cplx(2), cplx(3), cplx(0, 4)};
  const Matrix m = make_matrix(2, 2, e);
  EXPECT_EQ(m(0, 1), cplx(2));
  EXPECT_EQ(m(1, 1), cplx(0, 4));
  EXPECT_EQ(code_of([&] { make_matrix(2, 3, e); }), Errc::parse_error);
  const std::array<cplx, 1> bad{cplx(std::nan(""), 0)};
  EXPECT_EQ(code_of([&] { make_matrix(1, 1, bad); }), Errc::parse_error);
}

TEST(HermitianEig, SmallExamples) {
  EXPECT_LT((hermitian_eig(Matrix::Identity(3, 3)).values - RealVector::Ones(3)).norm(), 1e-14);
  const RealVector d = hermitian_eig(mat({{2, 0}, {0, -5}})).values;
  EXPECT_DOUBLE_EQ(d(0), -5.0);
  EXPECT_DOUBLE_EQ(d(1), 2.0);
  const RealVector t = hermitian_eig(mat({{1, -1}, {-1, 2}})).values;
  EXPECT_NEAR(t(0), (3.0 - std::sqrt(5.0)) / 2.0, 1e-14);
  EXPECT_NEAR(t(1), (3.0 + std::sqrt(5.0)) / 2.0, 1e-14);
}

TEST(HermitianEig, Errors) {
  EXPECT_EQ(code_of([] { hermitian_eig(mat({{1, 2}, {0, 1}})); }), Errc::not_hermitian);
  EXPECT_EQ(code_of([] { hermitian_eig(Matrix::Zero(2, 3)); }), Errc::non_square);
}

TEST(HermitianEig, ReconstructionOrthonormalityAndPhase) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 7);
    const Matrix m = random_hermitian(n, seed);
    const HermitianEigen e = hermitian_eig(m);
    const double fm = m.norm();
    EXPECT_LE((m - e.vectors * e.values.asDiagonal() * e.vectors.adjoint()).norm(),
              1e-10 * std::max(1.0, fm) * std::max(1.0, fm));
    EXPECT_LE((e.vectors.adjoint() * e.vectors - Matrix::Identity(n, n)).norm(), 1e-10);
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(e.vectors(i, j)) > 1e-12) {
          EXPECT_NEAR(e.vectors(i, j).imag(), 0.0, 1e-12);
          EXPECT_GT(e.vectors(i, j).real(), 0.0);
          break;
        }
      }
    }
    const HermitianEigen again = hermitian_eig(m);
    EXPECT_EQ(max_abs(again.vectors - e.vectors), 0.0);
  }
}

TEST(HermitianEig, ShiftMovesEigenvaluesExactly) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Matrix m = random_hermitian(5, seed);
    const double c = 0.75;
    const RealVector a = hermitian_eigenvalues(m);
    const RealVector b = hermitian_eigenvalues(m + c * Matrix::Identity(5, 5));
    EXPECT_LE((b - a - c * RealVector::Ones(5)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(PseudoInverse, Examples) {
  EXPECT_LT(max_abs(pseudo_inverse(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)), 1e-14);
  EXPECT_LT(max_abs(pseudo_inverse(mat({{1, 1}, {1, 1}})) - 0.25 * mat({{1, 1}, {1, 1}})), 1e-14);
  EXPECT_LT(max_abs(pseudo_inverse(mat({{2, 0}, {0, 0}})) - mat({{0.5, 0}, {0, 0}})), 1e-14);
  EXPECT_EQ(max_abs(pseudo_inverse(Matrix::Zero(2, 2))), 0.0);
}

TEST(PseudoInverse, PenroseIdentitiesAndInvolution) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const Eigen::Index r = 1 + static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n));
    const Matrix m = testutil::gaussian(n, r, seed) * testutil::gaussian(r, n, seed + 1000);
    const Matrix p = pseudo_inverse(m);
    const double s = m.norm();
    EXPECT_LE((m * p * m - m).norm(), 1e-9 * s);
    EXPECT_LE((p * m * p - p).norm(), 1e-9 * p.norm());
    EXPECT_LE(((m * p).adjoint() - m * p).norm(), 1e-9 * std::max(1.0, (m * p).norm()));
    EXPECT_LE(((p * m).adjoint() - p * m).norm(), 1e-9 * std::max(1.0, (p * m).norm()));
    EXPECT_LE((pseudo_inverse(p) - m).norm(), 1e-8 * s);
  }
}

TEST(PsdSqrt, Examples) {
  EXPECT_LT(max_abs(psd_sqrt(mat({{4, 0}, {0, 9}})) - mat({{2, 0}, {0, 3}})), 1e-14);
  EXPECT_LT(max_abs(psd_sqrt(mat({{1, 1}, {1, 1}})) - mat({{1, 1}, {1, 1}}) / std::sqrt(2.0)), 1e-14);
  EXPECT_EQ(max_abs(psd_sqrt(Matrix::Zero(3, 3))), 0.0);
  EXPECT_EQ(code_of([] { psd_sqrt(mat({{1, 0}, {0, -1}})); }), Errc::not_psd);
}

TEST(PsdSqrt, SquaresBackForEveryRank) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 6);
    const Eigen::Index r = 1 + static_cast<Eigen::Index>((seed / 6) % static_cast<std::uint64_t>(n));
    const Matrix m = random_psd_rank(n, r, seed);
    const Matrix root = psd_sqrt(m);
    EXPECT_LE((root * root - m).norm(), 1e-9 * std::max(1.0, m.norm()));
    EXPECT_LE((root - root.adjoint()).norm(), 1e-12 * std::max(1.0, root.norm()));
    EXPECT_GE(hermitian_eigenvalues(root)(0), -1e-9 * std::max(1.0, root.norm()));
  }
}

TEST(RealSpectrumPower, SignedBranchCubeRoot) {
  const Matrix t1 = mat({{0, 0.5}, {0.5, 0}});
  const Matrix p = real_spectrum_power(t1, 1.0 / 3.0);
  EXPECT_LT(max_abs(p - std::pow(2.0, -1.0 / 3.0) * mat({{0, 1}, {1, 0}})), 1e-12);
  EXPECT_LT(max_abs(real_spectrum_power(t1, 1.0 / 3.0, NegativeBranch::odd_root) - p), 1e-12);
}

TEST(RealSpectrumPower, WeightedComposite) {
  const double a = 1.0 / 3.0;
  const Matrix g =
      real_spectrum_power(mat({{0, 0.5}, {0.5, 0}}), a) * mat({{1, 0}, {1, 1}}) *
          real_spectrum_power(mat({{0.5, 0}, {0, 0.5}}), 1.0 - a) +
      real_spectrum_power(mat({{0.5, 0.5}, {0, 0}}), a) * mat({{1, 1}, {0, 1}}) *
          real_spectrum_power(mat({{0, 0}, {0.5, 0.5}}), 1.0 - a);
  EXPECT_LT(max_abs(g - mat({{1.5, 1.5}, {0.5, 0}})), 1e-9);
}

TEST(RealSpectrumPower, IdentityExponentAndErrors) {
  const Matrix m = mat({{2, 1}, {0, 3}});
  EXPECT_LT(max_abs(real_spectrum_power(m, 1.0) - m), 1e-12);
  EXPECT_EQ(code_of([] { real_spectrum_power(mat({{0, 1}, {0, 0}}), 0.5); }),
            Errc::non_diagonalizable);
  EXPECT_EQ(code_of([] { real_spectrum_power(mat({{0, -1}, {1, 0}}), 0.5); }),
            Errc::complex_spectrum);
  EXPECT_EQ(code_of([] { real_spectrum_power(mat({{-1, 0}, {0, 1}}), 0.5, NegativeBranch::reject); }),
            Errc::negative_base);
  EXPECT_EQ(code_of([] { real_spectrum_power(mat({{-1, 0}, {0, 1}}), 0.5, NegativeBranch::odd_root); }),
            Errc::negative_base);
  EXPECT_EQ(code_of([] { real_spectrum_power(mat({{0, 0}, {0, 1}}), -1.0); }), Errc::singular_power);
}

TEST(RealSpectrumPower, ExponentsAdd) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    // Diagonalizable with positive spectrum: S D S^{-1}.
    const Matrix s = testutil::gaussian(4, 4, seed) + 3.0 * Matrix::Identity(4, 4);
    RealVector d(4);
    d << 0.5, 1.0, 2.0, 3.5;
    const Matrix m = s * d.cast<cplx>().asDiagonal() * s.inverse();
    const double a = 0.3;
    const double b = 1.45;
    const Matrix lhs = real_spectrum_power(m, a) * real_spectrum_power(m, b);
    const Matrix rhs = real_spectrum_power(m, a + b);
    EXPECT_LE((lhs - rhs).norm(), 1e-8 * rhs.norm());
  }
}

TEST(PsdPower, ZeroToTheZeroIsOne) {
  EXPECT_LT(max_abs(psd_power(mat({{0, 0}, {0, 4}}), 0.0) - Matrix::Identity(2, 2)), 1e-14);
  EXPECT_LT(max_abs(psd_power(mat({{4, 0}, {0, 9}}), 1.5) - mat({{8, 0}, {0, 27}})), 1e-12);
}

TEST(SpectralNorm, MatchesSvd) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix m = testutil::gaussian(4, 3, seed);
    Eigen::JacobiSVD<Matrix> svd(m);
    EXPECT_NEAR(spectral_norm(m), svd.singularValues()(0), 1e-12);
  }
}

}  // namespace
