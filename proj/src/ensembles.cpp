#include "opradius/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "opradius/errors.hpp"
#include "opradius/seeding.hpp"

namespace opradius {

namespace {

constexpr double kHalfVariance = std::numbers::sqrt2 / 2.0;

class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed), normal_(0.0, kHalfVariance) {}
  cplx next() {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return {re, im};
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

Matrix gaussian_fill(Gaussian& g, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g.next();
  }
  return m;
}

Matrix random_hermitian(Gaussian& g, Eigen::Index r) {
  const Matrix m = gaussian_fill(g, r, r);
  return 0.5 * (m + m.adjoint());
}

Eigen::Index rank_of(const SemiHilbertSpace& s) { return static_cast<Eigen::Index>(s.rank()); }
Eigen::Index dim_of(const SemiHilbertSpace& s) { return static_cast<Eigen::Index>(s.dim()); }

}  // namespace

TrialShape trial_shape(const EnsembleConfig& cfg, std::size_t trial) {
  const std::size_t ndims = static_cast<std::size_t>(cfg.dim_max - cfg.dim_min + 1);
  const int dim = cfg.dim_min + static_cast<int>(trial % ndims);
  const int rank = cfg.ranks == RankPolicy::all
                       ? 1 + static_cast<int>((trial / ndims) % static_cast<std::size_t>(dim))
                       : dim;
  return {dim, rank};
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Gaussian g(seed);
  return gaussian_fill(g, rows, cols);
}

Vector random_vector(Eigen::Index dim, std::uint64_t seed) {
  Gaussian g(seed);
  return gaussian_fill(g, dim, 1).col(0);
}

Matrix random_psd(int dim, int rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim) {
    std::ostringstream os;
    os << "rank " << rank << " outside [1, " << dim << "]";
    raise(Errc::bad_rank, os.str());
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    Gaussian g(derive_seed(seed, {attempt}));
    const Matrix f = gaussian_fill(g, dim, rank);
    const Matrix a = hermitian_part(f * f.adjoint());
    const RealVector ev = hermitian_eigenvalues(a);
    const double top = ev(dim - 1);
    int r = 0;
    for (int i = 0; i < dim; ++i) r += ev(i) > kRankCutoff * top ? 1 : 0;
    if (r == rank) return a;
  }
}

Matrix random_in_BA(const SemiHilbertSpace& s, std::uint64_t seed) {
  Gaussian g(seed);
  const Eigen::Index r = rank_of(s);
  const Eigen::Index k = dim_of(s) - r;
  const Matrix& q = s.range_basis();
  const Matrix& qn = s.null_basis();
  Matrix t = Matrix::Zero(dim_of(s), dim_of(s));
  if (r > 0) t += q * gaussian_fill(g, r, r) * q.adjoint();
  if (k > 0 && r > 0) t += qn * gaussian_fill(g, k, r) * q.adjoint();
  if (k > 0) t += qn * gaussian_fill(g, k, k) * qn.adjoint();
  return t;
}

Matrix random_a_selfadjoint(const SemiHilbertSpace& s, std::uint64_t seed) {
  Gaussian g(seed);
  return s.lift(random_hermitian(g, rank_of(s)));
}

Matrix random_a_positive(const SemiHilbertSpace& s, std::uint64_t seed) {
  Gaussian g(seed);
  const Eigen::Index r = rank_of(s);
  const Matrix f = gaussian_fill(g, r, r);
  return s.lift(hermitian_part(f * f.adjoint()));
}

Matrix haar_unitary(Eigen::Index r, std::uint64_t seed) {
  if (r == 0) return Matrix(0, 0);
  Gaussian g(seed);
  const Matrix z = gaussian_fill(g, r, r);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(r, r);
  const Matrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < r; ++j) {
    const double mag = std::abs(rr(j, j));
    if (mag > 0.0) q.col(j) *= rr(j, j) / mag;
  }
  return q;
}

Matrix random_a_unitary(const SemiHilbertSpace& s, std::uint64_t seed) {
  Matrix u = s.lift(haar_unitary(rank_of(s), seed));
  if (s.null_basis().cols() > 0) u += s.null_basis() * s.null_basis().adjoint();
  return u;
}

Matrix random_a_normal(const SemiHilbertSpace& s, std::uint64_t seed) {
  const Eigen::Index r = rank_of(s);
  const Matrix u = haar_unitary(r, derive_seed(seed, {1}));
  Gaussian g(derive_seed(seed, {2}));
  Vector d(r);
  for (Eigen::Index i = 0; i < r; ++i) d(i) = g.next();
  return s.lift(u * d.asDiagonal() * u.adjoint());
}

Matrix random_rank_one(const SemiHilbertSpace& s, std::uint64_t seed, bool nilpotent) {
  const Eigen::Index r = rank_of(s);
  Gaussian g(seed);
  const Vector u = gaussian_fill(g, r, 1).col(0);
  Vector v = gaussian_fill(g, r, 1).col(0);
  if (nilpotent && r >= 2) v -= u * (u.dot(v) / u.squaredNorm());
  return s.lift(u * v.adjoint());
}

std::vector<Matrix> random_commuting_family(const SemiHilbertSpace& s, int n, std::uint64_t seed) {
  const Eigen::Index r = rank_of(s);
  Gaussian g(seed);
  Matrix h = random_hermitian(g, r);
  if (r > 0) {
    const double scale = spectral_norm(h);
    if (scale > 0.0) h /= scale;
  }
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    // Horner evaluation of a random complex polynomial of degree <= r.
    Matrix p = Matrix::Zero(r, r);
    for (Eigen::Index d = 0; d <= r; ++d) {
      p = p * h + g.next() * Matrix::Identity(r, r);
    }
    out.push_back(s.lift(p));
  }
  return out;
}

}  // namespace opradius
