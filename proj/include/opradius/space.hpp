#pragma once

// Semi-Hilbertian space over C^n induced by a PSD metric A:
//   <x, y>_A = y* A x,   ||x||_A = sqrt(<x, x>_A).
//
// In finite dimension the Douglas range condition, A^{1/2}-boundedness and
// A-boundedness all collapse to one predicate: T maps null(A) into null(A).
// That predicate is in_BA below.

#include <cstddef>

#include "opradius/numkernel.hpp"

namespace opradius {

inline constexpr double kDefaultTol = 1e-10;

struct OperatorClassification {
  bool in_BA = false;
  bool a_selfadjoint = false;
  bool a_positive = false;
  bool a_normal = false;  // T#T = TT#, tested on the compression
  bool a_unitary = false; // in_BA with unitary compression
};

/// r x r matrix Lambda^{1/2} Q* T Q Lambda^{-1/2}.
struct CompressedOperator {
  std::size_t r = 0;
  Matrix M;
};

class SemiHilbertSpace {
 public:
  /// Validates A (Hermitian and PSD within tol) and caches its spectral data.
  /// Eigenvalues at or below tol * lambda_max are treated as zero.
  static SemiHilbertSpace build(const Matrix& a, double tol = kDefaultTol);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(metric_.rows()); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(lambda_.size()); }
  double tol() const noexcept { return tol_; }

  const Matrix& metric() const noexcept { return metric_; }
  const Matrix& range_basis() const noexcept { return q_; }
  const RealVector& lambda() const noexcept { return lambda_; }
  const Matrix& null_basis() const noexcept { return qn_; }
  const Matrix& projector() const noexcept { return projector_; }
  const Matrix& a_dagger() const noexcept { return a_dagger_; }
  const Matrix& a_half() const noexcept { return a_half_; }
  const Matrix& a_half_dagger() const noexcept { return a_half_dagger_; }

  /// lambda_max / lambda_min over the retained spectrum (1 when r = 0).
  double condition() const noexcept { return condition_; }

  cplx a_inner(const Vector& x, const Vector& y) const;
  double a_norm(const Vector& x) const;

  bool in_BA(const Matrix& t) const;
  OperatorClassification classify(const Matrix& t) const;

  /// A^dagger T* A. Throws NotInBA when T has no A-adjoint.
  Matrix sharp_adjoint(const Matrix& t) const;
  Matrix re_a(const Matrix& t) const;
  Matrix im_a(const Matrix& t) const;

  /// Throws NotInBA unless in_BA(t).
  CompressedOperator compress(const Matrix& t) const;
  /// Same formula with no membership check.
  Matrix compress_unchecked(const Matrix& t) const;

  /// Inverse of compress on operators with zero null-space blocks:
  /// Q Lambda^{-1/2} N Lambda^{1/2} Q*.
  Matrix lift(const Matrix& n) const;

  /// y = Lambda^{1/2} Q* x, so that ||x||_A = ||y|| and <Tx,x>_A = <My,y>.
  Vector compress_vector(const Vector& x) const;
  /// x = Q Lambda^{-1/2} y, a right inverse of compress_vector.
  Vector lift_vector(const Vector& y) const;

 private:
  SemiHilbertSpace() = default;

  void require_vector(const Vector& x) const;
  void require_operator(const Matrix& t) const;
  double operator_scale(const Matrix& t) const;

  Matrix metric_;
  Matrix q_;
  RealVector lambda_;
  RealVector sqrt_lambda_;
  Matrix qn_;
  Matrix projector_;
  Matrix a_dagger_;
  Matrix a_half_;
  Matrix a_half_dagger_;
  double metric_norm_ = 0.0;
  double condition_ = 1.0;
  double tol_ = kDefaultTol;
};

}  // namespace opradius
