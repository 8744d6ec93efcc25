#include "opradius/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opradius/errors.hpp"

namespace opradius {

SemiHilbertSpace SemiHilbertSpace::build(const Matrix& a, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) raise(Errc::bad_parameter, "tolerance must be positive");
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << "metric must be square, got " << a.rows() << "x" << a.cols();
    raise(Errc::non_square, os.str());
  }
  if (!all_finite(a)) raise(Errc::parse_error, "metric has non-finite entries");
  const double asym = (a - a.adjoint()).norm();
  const double norm = a.norm();
  if (asym > tol * std::max(1.0, norm)) {
    std::ostringstream os;
    os << "metric is not Hermitian: ||A - A*||_F = " << asym;
    raise(Errc::not_hermitian, os.str());
  }

  SemiHilbertSpace s;
  s.tol_ = tol;
  s.metric_ = hermitian_part(a);
  s.metric_norm_ = s.metric_.norm();
  const Eigen::Index n = a.rows();

  const HermitianEigen eig = n > 0 ? hermitian_eig(s.metric_) : HermitianEigen{};
  const double top = n > 0 ? std::max(eig.values(n - 1), 0.0) : 0.0;
  if (n > 0 && eig.values(0) < -tol * top) {
    std::ostringstream os;
    os << "metric is not PSD: eigenvalue " << eig.values(0) << " below -" << tol << " * " << top;
    raise(Errc::not_psd, os.str());
  }
  if (n > 0 && top == 0.0 && eig.values(0) < 0.0) {
    raise(Errc::not_psd, "metric is negative semidefinite");
  }

  Eigen::Index first = n;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eig.values(i) > tol * top && top > 0.0) {
      first = i;
      break;
    }
  }
  const Eigen::Index r = n - first;
  s.q_ = n > 0 ? Matrix(eig.vectors.rightCols(r)) : Matrix(0, 0);
  s.qn_ = n > 0 ? Matrix(eig.vectors.leftCols(first)) : Matrix(0, 0);
  s.lambda_ = n > 0 ? RealVector(eig.values.tail(r)) : RealVector(0);
  s.sqrt_lambda_ = s.lambda_.cwiseSqrt();
  s.condition_ = r > 0 ? s.lambda_(r - 1) / s.lambda_(0) : 1.0;

  s.projector_ = s.q_ * s.q_.adjoint();
  const RealVector inv = s.lambda_.cwiseInverse();
  const RealVector inv_sqrt = s.sqrt_lambda_.cwiseInverse();
  s.a_dagger_ = s.q_ * inv.asDiagonal() * s.q_.adjoint();
  s.a_half_ = s.q_ * s.sqrt_lambda_.asDiagonal() * s.q_.adjoint();
  s.a_half_dagger_ = s.q_ * inv_sqrt.asDiagonal() * s.q_.adjoint();
  if (n > 0 && r == 0) {
    s.projector_ = Matrix::Zero(n, n);
    s.a_dagger_ = Matrix::Zero(n, n);
    s.a_half_ = Matrix::Zero(n, n);
    s.a_half_dagger_ = Matrix::Zero(n, n);
  }
  return s;
}

void SemiHilbertSpace::require_vector(const Vector& x) const {
  if (x.size() != metric_.rows()) {
    std::ostringstream os;
    os << "vector of length " << x.size() << " in a space of dimension " << metric_.rows();
    raise(Errc::dimension_mismatch, os.str());
  }
}

void SemiHilbertSpace::require_operator(const Matrix& t) const {
  if (t.rows() != metric_.rows() || t.cols() != metric_.cols()) {
    std::ostringstream os;
    os << "operator is " << t.rows() << "x" << t.cols() << " in a space of dimension "
       << metric_.rows();
    raise(Errc::dimension_mismatch, os.str());
  }
}

double SemiHilbertSpace::operator_scale(const Matrix& t) const {
  return tol_ * (1.0 + t.norm() * metric_norm_);
}

cplx SemiHilbertSpace::a_inner(const Vector& x, const Vector& y) const {
  require_vector(x);
  require_vector(y);
  return y.dot(metric_ * x);
}

double SemiHilbertSpace::a_norm(const Vector& x) const {
  require_vector(x);
  return compress_vector(x).norm();
}

bool SemiHilbertSpace::in_BA(const Matrix& t) const {
  require_operator(t);
  if (qn_.cols() == 0) return true;
  if (q_.cols() == 0) return true;
  const Matrix leak = sqrt_lambda_.asDiagonal() * (q_.adjoint() * t * qn_);
  return leak.norm() <= operator_scale(t);
}

OperatorClassification SemiHilbertSpace::classify(const Matrix& t) const {
  OperatorClassification c;
  c.in_BA = in_BA(t);
  if (!c.in_BA) return c;

  const Matrix at = metric_ * t;
  const double scale = operator_scale(t);
  c.a_selfadjoint = (at - at.adjoint()).norm() <= scale;
  if (c.a_selfadjoint) {
    const RealVector ev = at.rows() > 0 ? hermitian_eigenvalues(hermitian_part(at)) : RealVector(0);
    c.a_positive = ev.size() == 0 || ev(0) >= -scale;
  }

  // Rounding in the compression grows like cond(Lambda).
  const Matrix m = compress_unchecked(t);
  const double mscale = tol_ * std::max(1.0, condition_) * (1.0 + m.squaredNorm());
  c.a_normal = (m.adjoint() * m - m * m.adjoint()).norm() <= mscale;
  c.a_unitary =
      (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= mscale;
  return c;
}

Matrix SemiHilbertSpace::sharp_adjoint(const Matrix& t) const {
  if (!in_BA(t)) {
    raise(Errc::not_in_ba,
          "operator maps null(A) outside null(A), so A^dagger T* A is not an A-adjoint");
  }
  return a_dagger_ * t.adjoint() * metric_;
}

Matrix SemiHilbertSpace::re_a(const Matrix& t) const { return 0.5 * (t + sharp_adjoint(t)); }

Matrix SemiHilbertSpace::im_a(const Matrix& t) const {
  return (t - sharp_adjoint(t)) / cplx(0.0, 2.0);
}

CompressedOperator SemiHilbertSpace::compress(const Matrix& t) const {
  if (!in_BA(t)) {
    raise(Errc::not_in_ba, "operator maps null(A) outside null(A); compression is not faithful");
  }
  return CompressedOperator{rank(), compress_unchecked(t)};
}

Matrix SemiHilbertSpace::compress_unchecked(const Matrix& t) const {
  require_operator(t);
  const RealVector inv_sqrt = sqrt_lambda_.cwiseInverse();
  return sqrt_lambda_.asDiagonal() * (q_.adjoint() * t * q_) * inv_sqrt.asDiagonal();
}

Matrix SemiHilbertSpace::lift(const Matrix& n) const {
  if (n.rows() != lambda_.size() || n.cols() != lambda_.size()) {
    raise(Errc::dimension_mismatch, "lift expects an r x r matrix");
  }
  if (lambda_.size() == 0) return Matrix::Zero(metric_.rows(), metric_.cols());
  const RealVector inv_sqrt = sqrt_lambda_.cwiseInverse();
  return q_ * (inv_sqrt.asDiagonal() * n * sqrt_lambda_.asDiagonal()) * q_.adjoint();
}

Vector SemiHilbertSpace::compress_vector(const Vector& x) const {
  require_vector(x);
  return sqrt_lambda_.asDiagonal() * (q_.adjoint() * x);
}

Vector SemiHilbertSpace::lift_vector(const Vector& y) const {
  if (y.size() != lambda_.size()) raise(Errc::dimension_mismatch, "lift_vector expects length r");
  if (lambda_.size() == 0) return Vector::Zero(metric_.rows());
  return q_ * sqrt_lambda_.cwiseInverse().asDiagonal() * y;
}

}  // namespace opradius
