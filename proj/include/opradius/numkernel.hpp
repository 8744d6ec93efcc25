#pragma once

// Dense complex matrix primitives shared by every other module.

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace opradius {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative cutoff below which singular values / eigenvalues count as zero.
inline constexpr double kRankCutoff = 1e-10;
/// Relative Hermitian-symmetry tolerance accepted by the eigensolver.
inline constexpr double kHermitianTol = 1e-8;

/// Builds a rows x cols matrix from row-major entries. Throws ParseError if
/// the entry count is wrong or any entry is not finite.
Matrix make_matrix(std::size_t rows, std::size_t cols, std::span<const cplx> row_major);

bool all_finite(const Matrix& m) noexcept;
double frobenius(const Matrix& m) noexcept;
Matrix hermitian_part(const Matrix& m);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns, unitary
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; each
/// eigenvector is phase-fixed so its first nonzero component is real
/// positive, which makes the output reproducible.
HermitianEigen hermitian_eig(const Matrix& m);

/// Eigenvalues only; same checks as hermitian_eig.
RealVector hermitian_eigenvalues(const Matrix& m);

/// Moore-Penrose inverse through the SVD; singular values at or below
/// cutoff * sigma_max are dropped.
Matrix pseudo_inverse(const Matrix& m, double cutoff = kRankCutoff);

/// Hermitian PSD square root. Eigenvalues in [-1e-10 lambda_max, 0) are
/// clamped to zero; anything more negative raises NotPSD.
Matrix psd_sqrt(const Matrix& m);

enum class NegativeBranch {
  signed_real,  // sign(l) |l|^p
  odd_root,     // real root: p must be a/b with b odd
  reject,       // NegativeBase on any negative eigenvalue
};

/// M^p = V diag(f(l_i)) V^{-1} for diagonalizable M with real spectrum.
Matrix real_spectrum_power(const Matrix& m, double p,
                           NegativeBranch branch = NegativeBranch::signed_real);

/// Power of a Hermitian PSD matrix via its eigendecomposition; small
/// negative eigenvalues from rounding are clamped. 0^0 is taken as 1.
Matrix psd_power(const Matrix& m, double p);

/// Largest singular value.
double spectral_norm(const Matrix& m);

}  // namespace opradius
