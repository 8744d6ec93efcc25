#include "opradius/elliptic.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "opradius/errors.hpp"

namespace opradius {

namespace {

using RealMatrix = Eigen::MatrixXd;

void check_n(int n) {
  if (n < 3) {
    raise(Errc::config_error, "N = " + std::to_string(n) + " is too small (need N >= 3)");
  }
  const long long dim = static_cast<long long>(n - 1) * (n - 1);
  if (dim > kEllipticDimCap) {
    std::ostringstream os;
    os << "N = " << n << " gives dimension " << dim << ", above the cap " << kEllipticDimCap;
    raise(Errc::config_error, os.str());
  }
}

// Orthonormal sine modes of the 1-D second difference and their eigenvalues
// 2 - 2 cos(k pi h).
void sine_modes(int n, RealMatrix& phi, RealVector& mu) {
  const int m = n - 1;
  const double h = 1.0 / n;
  phi.resize(m, m);
  mu.resize(m);
  const double scale = std::sqrt(2.0 * h);
  for (int k = 1; k <= m; ++k) {
    mu(k - 1) = 2.0 - 2.0 * std::cos(k * std::numbers::pi * h);
    for (int i = 1; i <= m; ++i) {
      phi(i - 1, k - 1) = scale * std::sin(k * std::numbers::pi * i * h);
    }
  }
}

double hermitian_radius(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

void analytic(int n, const RealVector& v, const SweepOptions& sweep, EllipticRow& row) {
  const int m = n - 1;
  const double h = 1.0 / n;
  RealMatrix phi;
  RealVector mu;
  sine_modes(n, phi, mu);
  // Q = phi (x) phi, lambda_{jk} = (mu_j + mu_k) / h^2.
  const RealMatrix q = Eigen::kroneckerProduct(phi, phi);
  RealVector lam(row.dim);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) lam(j * m + k) = (mu(j) + mu(k)) / (h * h);
  }
  const RealMatrix b = q.transpose() * v.asDiagonal() * q;
  const RealVector inv = lam.cwiseInverse();
  const RealVector half = lam.cwiseSqrt();
  const RealVector inv_half = half.cwiseInverse();

  const RealMatrix ms = inv_half.asDiagonal() * b * inv_half.asDiagonal();
  row.w_s = hermitian_radius(0.5 * (ms + ms.transpose()));

  const RealMatrix g = b * inv.asDiagonal() * b + inv.asDiagonal() * b * b;
  const RealMatrix mg = half.asDiagonal() * g * inv_half.asDiagonal();
  const SweepResult sw = radius_sweep(mg.cast<cplx>(), sweep);
  row.lhs = sw.value;
  row.lhs_upper = sw.upper_bound;
}

void dense(int n, const RealVector& v, const SweepOptions& sweep, EllipticRow& row) {
  const Matrix k = laplacian_2d(n);
  const SemiHilbertSpace space = SemiHilbertSpace::build(k);
  const Matrix t = v.cast<cplx>().asDiagonal();
  const Matrix s = k.inverse() * t;
  const RadiusResult ws = a_numerical_radius(space, s, sweep);
  row.w_s = ws.value;
  const RadiusResult lhs = a_numerical_radius(space, t * s + s * t, sweep);
  row.lhs = lhs.value;
  row.lhs_upper = lhs.value + lhs.gap;
}

}  // namespace

Matrix laplacian_2d(int n) {
  check_n(n);
  const int m = n - 1;
  const double inv_h2 = static_cast<double>(n) * n;
  Matrix k = Matrix::Zero(m * m, m * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int p = i * m + j;
      k(p, p) = 4.0 * inv_h2;
      if (i > 0) k(p, p - m) = -inv_h2;
      if (i + 1 < m) k(p, p + m) = -inv_h2;
      if (j > 0) k(p, p - 1) = -inv_h2;
      if (j + 1 < m) k(p, p + 1) = -inv_h2;
    }
  }
  return k;
}

RealVector potential_samples(int n, Potential p) {
  check_n(n);
  const int m = n - 1;
  const double h = 1.0 / n;
  RealVector v = RealVector::Zero(m * m);
  if (p == Potential::zero) return v;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      v((i - 1) * m + (j - 1)) = std::sin(std::numbers::pi * i * h) * std::sin(std::numbers::pi * j * h);
    }
  }
  return v;
}

EllipticRow elliptic_row(int n, const EllipticOptions& opt) {
  check_n(n);
  const auto start = std::chrono::steady_clock::now();
  EllipticRow row;
  row.n = n;
  row.dim = (n - 1) * (n - 1);
  const RealVector v = potential_samples(n, opt.potential);
  row.max_v = v.cwiseAbs().maxCoeff();
  if (opt.route == EllipticRoute::analytic) {
    analytic(n, v, opt.sweep, row);
  } else {
    dense(n, v, opt.sweep, row);
  }
  row.rhs = 2.0 * std::numbers::sqrt2 * row.max_v * row.w_s;
  row.satisfied = row.lhs_upper <= row.rhs;
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string to_string(Potential p) { return p == Potential::sine ? "sine" : "zero"; }

}  // namespace opradius
