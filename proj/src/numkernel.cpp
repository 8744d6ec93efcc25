#include "opradius/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opradius/errors.hpp"

namespace opradius {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " needs a square matrix, got " << m.rows() << "x" << m.cols();
    raise(Errc::non_square, os.str());
  }
}

void require_hermitian(const Matrix& m) {
  require_square(m, "Hermitian eigensolver");
  const double asym = (m - m.adjoint()).norm();
  const double bound = kHermitianTol * std::max(1.0, m.norm());
  if (asym > bound) {
    std::ostringstream os;
    os << "||M - M*||_F = " << asym << " exceeds " << bound;
    raise(Errc::not_hermitian, os.str());
  }
}

void fix_phases(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double scale = v.col(j).norm();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > 1e-12 * scale) {
        v.col(j) *= std::conj(v(i, j)) / mag;
        v(i, j) = cplx(v(i, j).real(), 0.0);
        break;
      }
    }
  }
}

// Continued-fraction search for p = a/b; returns b or 0 when none fits.
long rational_denominator(double p, long& numerator) {
  double x = p;
  long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int iter = 0; iter < 40; ++iter) {
    const double a = std::floor(x);
    const long ai = static_cast<long>(a);
    const long h2 = ai * h0 + h1;
    const long k2 = ai * k0 + k1;
    if (k2 > 1000000) break;
    h1 = h0; h0 = h2; k1 = k0; k0 = k2;
    if (std::abs(static_cast<double>(h0) / static_cast<double>(k0) - p) <= 1e-12 * std::max(1.0, std::abs(p))) {
      numerator = h0;
      return k0;
    }
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return 0;
}

}  // namespace

Matrix make_matrix(std::size_t rows, std::size_t cols, std::span<const cplx> row_major) {
  if (row_major.size() != rows * cols) {
    std::ostringstream os;
    os << "expected " << rows * cols << " entries for a " << rows << "x" << cols
       << " matrix, got " << row_major.size();
    raise(Errc::parse_error, os.str());
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const cplx z = row_major[i * cols + j];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os << "non-finite entry at (" << i << ", " << j << ")";
        raise(Errc::parse_error, os.str());
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z;
    }
  }
  return m;
}

bool all_finite(const Matrix& m) noexcept {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const cplx z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double frobenius(const Matrix& m) noexcept { return m.norm(); }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianEigen hermitian_eig(const Matrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::ComputeEigenvectors);
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(out.vectors);
  return out;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix pseudo_inverse(const Matrix& m, double cutoff) {
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double threshold = cutoff * s(0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= threshold) break;
    out.noalias() += (svd.matrixV().col(k) / s(k)) * svd.matrixU().col(k).adjoint();
  }
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  const HermitianEigen eig = hermitian_eig(m);
  const Eigen::Index n = eig.values.size();
  if (n == 0) return m;
  const double top = std::max(eig.values(n - 1), 0.0);
  if (eig.values(0) < -kRankCutoff * top || (top == 0.0 && eig.values(0) < 0.0)) {
    std::ostringstream os;
    os << "smallest eigenvalue " << eig.values(0) << " below -1e-10 * " << top;
    raise(Errc::not_psd, os.str());
  }
  const RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

Matrix real_spectrum_power(const Matrix& m, double p, NegativeBranch branch) {
  require_square(m, "real_spectrum_power");
  if (p == 1.0) return m;
  Eigen::ComplexEigenSolver<Matrix> solver(m, true);
  if (solver.info() != Eigen::Success) raise(Errc::non_diagonalizable, "eigensolver did not converge");
  const Vector& lambda = solver.eigenvalues();
  const Matrix& v = solver.eigenvectors();

  Eigen::JacobiSVD<Matrix> svd(v);
  const RealVector& sv = svd.singularValues();
  if (sv.size() > 0 && (sv(sv.size() - 1) == 0.0 || sv(0) / sv(sv.size() - 1) >= 1e8)) {
    raise(Errc::non_diagonalizable, "eigenvector matrix condition number >= 1e8");
  }

  double largest = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) largest = std::max(largest, std::abs(lambda(i)));
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i).imag()) > kHermitianTol * std::max(1.0, std::abs(lambda(i)))) {
      std::ostringstream os;
      os << "eigenvalue " << lambda(i) << " is not real";
      raise(Errc::complex_spectrum, os.str());
    }
  }

  long numerator = 0;
  long denominator = 0;
  Vector mapped(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double l = lambda(i).real();
    const double mag = std::abs(l);
    if (mag <= kRankCutoff * largest) {
      if (p < 0.0) raise(Errc::singular_power, "negative power of a singular matrix");
      mapped(i) = p == 0.0 ? 1.0 : 0.0;
      continue;
    }
    if (l > 0.0) {
      mapped(i) = std::pow(l, p);
      continue;
    }
    switch (branch) {
      case NegativeBranch::signed_real:
        mapped(i) = -std::pow(mag, p);
        break;
      case NegativeBranch::odd_root: {
        if (denominator == 0) denominator = rational_denominator(p, numerator);
        if (denominator == 0 || denominator % 2 == 0) {
          raise(Errc::negative_base, "negative eigenvalue needs an exponent with odd denominator");
        }
        const double root = std::pow(mag, p);
        mapped(i) = (std::abs(numerator) % 2 == 1) ? -root : root;
        break;
      }
      case NegativeBranch::reject:
        raise(Errc::negative_base, "negative eigenvalue with signed branch disabled");
    }
  }
  Matrix out = v * mapped.asDiagonal() * v.inverse();
  // Real input with real spectrum gives a real power; drop round-off imaginary parts.
  if (m.imag().isZero(0.0)) out = out.real().cast<cplx>();
  return out;
}

Matrix psd_power(const Matrix& m, double p) {
  const HermitianEigen eig = hermitian_eig(m);
  const Eigen::Index n = eig.values.size();
  if (n == 0) return m;
  const double top = std::max(eig.values(n - 1), 0.0);
  if (eig.values(0) < -kHermitianTol * std::max(1.0, top)) {
    std::ostringstream os;
    os << "psd_power: eigenvalue " << eig.values(0) << " is negative";
    raise(Errc::not_psd, os.str());
  }
  RealVector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = eig.values(i) <= kRankCutoff * top ? 0.0 : eig.values(i);
    if (l == 0.0) {
      if (p < 0.0) raise(Errc::singular_power, "negative power of a singular matrix");
      mapped(i) = p == 0.0 ? 1.0 : 0.0;
    } else {
      mapped(i) = std::pow(l, p);
    }
  }
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace opradius
