#include "opradius/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <utility>

#include "opradius/errors.hpp"
#include "opradius/seeding.hpp"

namespace opradius {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

bool numerically_hermitian(const Matrix& m) {
  return (m - m.adjoint()).norm() <= 4.0 * std::numeric_limits<double>::epsilon() * m.norm();
}

// Extreme eigenvalues of Re(e^{it} M), reusing one solver across calls.
class Support {
 public:
  explicit Support(const Matrix& m) : m_(m), madj_(m.adjoint()), solver_(m.rows()) {}

  std::pair<double, double> extremes(double t) {
    const cplx e = std::polar(1.0, t);
    h_ = 0.5 * (e * m_ + std::conj(e) * madj_);
    solver_.compute(h_, Eigen::EigenvaluesOnly);
    const RealVector& v = solver_.eigenvalues();
    return {v(v.size() - 1), v(0)};
  }

  double f(double t) { return extremes(t).first; }

  Vector top_vector(double t) {
    const cplx e = std::polar(1.0, t);
    h_ = 0.5 * (e * m_ + std::conj(e) * madj_);
    solver_.compute(h_, Eigen::ComputeEigenvectors);
    Vector v = solver_.eigenvectors().col(m_.rows() - 1);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double mag = std::abs(v(i));
      if (mag > 1e-12) {
        v *= std::conj(v(i)) / mag;
        break;
      }
    }
    return v;
  }

 private:
  Matrix m_;
  Matrix madj_;
  Matrix h_;
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
};

// f on the uniform grid theta_k = 2 pi k / g (g divisible by 4).
std::vector<double> support_grid(Support& sup, int g, bool real_input) {
  std::vector<double> f(static_cast<std::size_t>(g));
  const int half = g / 2;
  if (real_input) {
    // f(-t) = f(t) for real M, so a quarter turn of solves covers the circle.
    const int quarter = g / 4;
    for (int k = 0; k <= quarter; ++k) {
      const auto [hi, lo] = sup.extremes(kTwoPi * k / g);
      f[static_cast<std::size_t>(k)] = hi;
      f[static_cast<std::size_t>((g - k) % g)] = hi;
      f[static_cast<std::size_t>(k + half)] = -lo;
      f[static_cast<std::size_t>(half - k)] = -lo;
    }
  } else {
    for (int k = 0; k < half; ++k) {
      const auto [hi, lo] = sup.extremes(kTwoPi * k / g);
      f[static_cast<std::size_t>(k)] = hi;
      f[static_cast<std::size_t>(k + half)] = -lo;
    }
  }
  return f;
}

// Golden-section maximization of sign*f on [lo, hi]; returns (sign*f, t).
std::pair<double, double> golden(Support& sup, double lo, double hi, double tol, double sign,
                                 double best, double best_t) {
  double a = lo;
  double b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = sign * sup.f(c);
  double fd = sign * sup.f(d);
  auto keep = [&](double v, double t) {
    if (v > best) {
      best = v;
      best_t = t;
    }
  };
  keep(fc, c);
  keep(fd, d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = sign * sup.f(c);
      keep(fc, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = sign * sup.f(d);
      keep(fd, d);
    }
  }
  return {best, best_t};
}

// Maximizes sign*f over the circle: grid, then refinement of the best
// grid-local maxima. Returns (sign*f value, angle, grid max of sign*f).
struct Extremum {
  double value;
  double angle;
  double grid_best;
};

Extremum optimize(Support& sup, const Matrix& m, const SweepOptions& opt, double sign) {
  int g = std::max(8, opt.grid);
  g = (g + 3) / 4 * 4;
  const bool real_input = m.imag().isZero(0.0);
  std::vector<double> f = support_grid(sup, g, real_input);
  for (double& v : f) v *= sign;

  std::vector<int> peaks;
  for (int k = 0; k < g; ++k) {
    const double prev = f[static_cast<std::size_t>((k + g - 1) % g)];
    const double next = f[static_cast<std::size_t>((k + 1) % g)];
    const double cur = f[static_cast<std::size_t>(k)];
    if (cur >= prev && cur >= next) peaks.push_back(k);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return f[static_cast<std::size_t>(a)] > f[static_cast<std::size_t>(b)];
  });
  const int grid_arg = peaks.front();
  const double grid_best = f[static_cast<std::size_t>(grid_arg)];

  const double step = kTwoPi / g;
  double best = grid_best;
  double best_t = step * grid_arg;
  const std::size_t n_refine =
      std::min(peaks.size(), static_cast<std::size_t>(std::max(0, opt.max_refine)));
  for (std::size_t i = 0; i < n_refine; ++i) {
    const double centre = step * peaks[i];
    std::tie(best, best_t) =
        golden(sup, centre - step, centre + step, opt.angle_tol, sign, best, best_t);
  }
  return {best, wrap_angle(best_t), grid_best};
}

void require_in_ba(const SemiHilbertSpace& s, const Matrix& t, const char* what) {
  if (!s.in_BA(t)) {
    raise(Errc::unbounded_form,
          std::string(what) +
              " is unbounded: the operator maps null(A) outside null(A), so the "
              "A-unit ball contains vectors x + k*n with arbitrarily large |<Tx,x>_A|");
  }
}

struct Candidate {
  double value;
  std::size_t index;
  Vector z;
};

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.index < b.index;
}

constexpr std::size_t kOracleBlock = 8192;

std::vector<Candidate> oracle_block(const Matrix& m, const OracleOptions& opt, std::size_t block) {
  const std::size_t begin = block * kOracleBlock;
  const std::size_t end = std::min(opt.samples, begin + kOracleBlock);
  const std::size_t keep = static_cast<std::size_t>(std::max(1, opt.refine_starts));
  std::mt19937_64 rng(derive_seed(opt.seed, {block}));
  std::normal_distribution<double> normal;
  const Eigen::Index r = m.rows();
  Vector z(r);
  std::vector<Candidate> top;
  top.reserve(keep + 1);
  for (std::size_t i = begin; i < end; ++i) {
    for (Eigen::Index k = 0; k < r; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(k) = cplx(re, im);
    }
    const double norm = z.norm();
    if (norm == 0.0) continue;
    z /= norm;
    const double value = std::abs(z.dot(m * z));
    if (top.size() < keep || value > top.back().value) {
      top.push_back(Candidate{value, i, z});
      std::sort(top.begin(), top.end(), candidate_before);
      if (top.size() > keep) top.pop_back();
    }
  }
  return top;
}

// Alternating phase update and power step on I + eta Re(e^{-i phi} M). Each
// step cannot decrease |<Mz,z>|, so the result stays a lower bound.
double ascend(const Matrix& m, Vector z, int iters) {
  const Matrix madj = m.adjoint();
  const double eta = 1.0 / std::max(m.norm(), 1e-300);
  double value = std::abs(z.dot(m * z));
  for (int it = 0; it < iters; ++it) {
    const cplx q = z.dot(m * z);
    const double mag = std::abs(q);
    if (mag == 0.0) break;
    const cplx phase = std::conj(q) / mag;
    const Vector hz = 0.5 * (phase * (m * z) + std::conj(phase) * (madj * z));
    Vector next = z + eta * hz;
    next.normalize();
    const double v = std::abs(next.dot(m * next));
    if (!(v > value)) break;
    value = v;
    z = std::move(next);
  }
  return value;
}

OracleResult finish_oracle(const Matrix& m, const OracleOptions& opt,
                           std::vector<std::vector<Candidate>>& blocks) {
  std::vector<Candidate> all;
  for (auto& b : blocks) {
    for (auto& c : b) all.push_back(std::move(c));
  }
  std::sort(all.begin(), all.end(), candidate_before);
  OracleResult out;
  if (all.empty()) return out;
  out.sampled = all.front().value;
  out.refined = out.sampled;
  if (opt.refine) {
    const std::size_t starts = std::min(all.size(), static_cast<std::size_t>(opt.refine_starts));
    for (std::size_t i = 0; i < starts; ++i) {
      out.refined = std::max(out.refined, ascend(m, all[i].z, opt.refine_iters));
    }
  }
  return out;
}

std::size_t block_count(std::size_t samples) {
  return (samples + kOracleBlock - 1) / kOracleBlock;
}

bool oracle_trivial(const Matrix& m, const OracleOptions& opt, OracleResult& out) {
  if (m.rows() == 0 || opt.samples == 0) {
    out = OracleResult{};
    return true;
  }
  if (m.rows() == 1) {
    out.sampled = out.refined = std::abs(m(0, 0));
    return true;
  }
  return false;
}

}  // namespace

SweepResult radius_sweep(const Matrix& m, const SweepOptions& opt) {
  SweepResult out;
  const Eigen::Index r = m.rows();
  if (r == 0) return out;
  if (r == 1) {
    out.value = std::abs(m(0, 0));
    out.angle = out.value > 0.0 ? wrap_angle(-std::arg(m(0, 0))) : 0.0;
    out.top = Vector::Ones(1);
    out.upper_bound = out.value;
    return out;
  }
  Support sup(m);
  if (numerically_hermitian(m)) {
    const auto [hi, lo] = sup.extremes(0.0);
    out.angle = hi >= -lo ? 0.0 : std::numbers::pi;
    out.value = std::max(hi, -lo);
    if (opt.witness) out.top = sup.top_vector(out.angle);
    out.upper_bound = out.value;
    return out;
  }
  const Extremum e = optimize(sup, m, opt, 1.0);
  int g = (std::max(8, opt.grid) + 3) / 4 * 4;
  out.value = e.value;
  out.angle = e.angle;
  if (opt.witness) out.top = sup.top_vector(e.angle);
  out.upper_bound = std::max(e.value, e.grid_best / std::cos(std::numbers::pi / g));
  return out;
}

double matrix_numerical_radius(const Matrix& m, const SweepOptions& opt) {
  return radius_sweep(m, opt).value;
}

double matrix_crawford(const Matrix& m, const SweepOptions& opt) {
  const Eigen::Index r = m.rows();
  if (r == 0) return 0.0;
  if (r == 1) return std::abs(m(0, 0));
  Support sup(m);
  if (numerically_hermitian(m)) {
    const auto [hi, lo] = sup.extremes(0.0);
    if (lo > 0.0) return lo;
    if (hi < 0.0) return -hi;
    return 0.0;
  }
  const Extremum e = optimize(sup, m, opt, -1.0);
  return std::max(0.0, e.value);
}

double operator_a_norm(const SemiHilbertSpace& s, const Matrix& t, bool strict) {
  if (strict && !s.in_BA(t)) {
    raise(Errc::not_in_ba, "operator maps null(A) outside null(A)");
  }
  if (s.rank() == 0) return 0.0;
  return spectral_norm(s.compress_unchecked(t));
}

RadiusResult a_numerical_radius(const SemiHilbertSpace& s, const Matrix& t,
                                const SweepOptions& opt) {
  require_in_ba(s, t, "A-numerical radius");
  RadiusResult out;
  if (s.rank() == 0) {
    out.witness_vector = Vector::Zero(static_cast<Eigen::Index>(s.dim()));
    return out;
  }
  const SweepResult sw = radius_sweep(s.compress_unchecked(t), opt);
  out.value = sw.value;
  out.argmax_angle = sw.angle;
  if (sw.top.size() > 0) out.witness_vector = s.lift_vector(sw.top);
  out.gap = std::max(0.0, sw.upper_bound - sw.value);
  return out;
}

double a_crawford(const SemiHilbertSpace& s, const Matrix& t, const SweepOptions& opt) {
  require_in_ba(s, t, "A-Crawford number");
  if (s.rank() == 0) {
    raise(Errc::degenerate_space, "rank(A) = 0: every A-quantity vanishes, Crawford number is 0");
  }
  return matrix_crawford(s.compress_unchecked(t), opt);
}

std::vector<BoundaryPoint> range_boundary(const SemiHilbertSpace& s, const Matrix& t,
                                          std::size_t num_angles) {
  require_in_ba(s, t, "numerical range");
  std::vector<BoundaryPoint> out;
  out.reserve(num_angles);
  if (s.rank() == 0) {
    for (std::size_t k = 0; k < num_angles; ++k) {
      out.push_back(BoundaryPoint{kTwoPi * static_cast<double>(k) / static_cast<double>(num_angles),
                                  0.0, cplx(0.0, 0.0)});
    }
    return out;
  }
  const Matrix m = s.compress_unchecked(t);
  Support sup(m);
  for (std::size_t k = 0; k < num_angles; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(num_angles);
    const Vector v = sup.top_vector(-theta);
    BoundaryPoint p;
    p.theta = theta;
    p.point = v.dot(m * v);
    p.support = (std::polar(1.0, -theta) * p.point).real();
    out.push_back(p);
  }
  return out;
}

OracleResult sampling_oracle_serial(const Matrix& m, const OracleOptions& opt) {
  OracleResult out;
  if (oracle_trivial(m, opt, out)) return out;
  const std::size_t nb = block_count(opt.samples);
  std::vector<std::vector<Candidate>> blocks(nb);
  for (std::size_t b = 0; b < nb; ++b) blocks[b] = oracle_block(m, opt, b);
  return finish_oracle(m, opt, blocks);
}

OracleResult sampling_oracle_parallel(const Matrix& m, const OracleOptions& opt) {
  OracleResult out;
  if (oracle_trivial(m, opt, out)) return out;
  const std::size_t nb = block_count(opt.samples);
  std::vector<std::vector<Candidate>> blocks(nb);
  const long long nbl = static_cast<long long>(nb);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long b = 0; b < nbl; ++b) {
    blocks[static_cast<std::size_t>(b)] = oracle_block(m, opt, static_cast<std::size_t>(b));
  }
  return finish_oracle(m, opt, blocks);
}

double sampling_oracle(const SemiHilbertSpace& s, const Matrix& t, std::size_t samples,
                       std::uint64_t seed) {
  OracleOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  return sampling_oracle(s, t, opt).sampled;
}

OracleResult sampling_oracle(const SemiHilbertSpace& s, const Matrix& t,
                             const OracleOptions& opt) {
  require_in_ba(s, t, "sampling oracle");
  return sampling_oracle_parallel(s.compress_unchecked(t), opt);
}

}  // namespace opradius
