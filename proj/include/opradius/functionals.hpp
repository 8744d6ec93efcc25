#pragma once

// A-seminorm, A-numerical radius and A-Crawford number. Everything is
// evaluated on the compression M = Lambda^{1/2} Q* T Q Lambda^{-1/2}, where
// <Tx,x>_A = <My,y> and ||x||_A = ||y|| for y = Lambda^{1/2} Q* x.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "opradius/space.hpp"

namespace opradius {

struct SweepOptions {
  int grid = 720;             // uniform angles on [0, 2pi)
  double angle_tol = 1e-12;   // golden-section bracket width
  int max_refine = 8;         // grid local maxima refined, best first (0: none)
  bool witness = true;        // compute the top eigenvector at the optimum
};

/// Support sweep f(theta) = lambda_max(Re(e^{i theta} M)); w(M) = max f.
struct SweepResult {
  double value = 0.0;
  double angle = 0.0;
  Vector top;                 // unit top eigenvector of Re(e^{i angle} M)
  double upper_bound = 0.0;   // certified: grid max / cos(pi / grid)
};

SweepResult radius_sweep(const Matrix& m, const SweepOptions& opt = {});
double matrix_numerical_radius(const Matrix& m, const SweepOptions& opt = {});
/// Distance from 0 to the numerical range of m.
double matrix_crawford(const Matrix& m, const SweepOptions& opt = {});

struct RadiusResult {
  double value = 0.0;
  double argmax_angle = 0.0;  // in [0, 2pi)
  Vector witness_vector;      // ||x||_A = 1 (empty when r = 0)
  double gap = 0.0;           // certified bound minus value
};

/// sigma_max of the compression. With strict set, operators outside B_A
/// raise NotInBA; otherwise the range-restricted seminorm is returned.
double operator_a_norm(const SemiHilbertSpace& s, const Matrix& t, bool strict = true);

/// Raises UnboundedForm outside B_A, where the supremum is infinite.
RadiusResult a_numerical_radius(const SemiHilbertSpace& s, const Matrix& t,
                                const SweepOptions& opt = {});

/// Raises UnboundedForm outside B_A and DegenerateSpace when rank(A) = 0.
double a_crawford(const SemiHilbertSpace& s, const Matrix& t, const SweepOptions& opt = {});

struct BoundaryPoint {
  double theta = 0.0;
  double support = 0.0;       // lambda_max(Re(e^{-i theta} M))
  cplx point;                 // <Mv, v> for the top eigenvector v
};

std::vector<BoundaryPoint> range_boundary(const SemiHilbertSpace& s, const Matrix& t,
                                          std::size_t num_angles);

struct OracleOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  // Eigen-free local ascent from the best samples. Off by default: the plain
  // oracle is the sample maximum.
  bool refine = false;
  int refine_starts = 8;
  int refine_iters = 4000;
};

struct OracleResult {
  double sampled = 0.0;  // max |<Mz,z>| over the uniform samples
  double refined = 0.0;  // after local ascent (equals sampled when off)
};

/// Lower bound on w(m) from uniform samples of the unit sphere of C^r.
/// Samples come in fixed blocks with per-block seeds, so the serial and the
/// parallel variants return bit-identical results.
OracleResult sampling_oracle_serial(const Matrix& m, const OracleOptions& opt);
OracleResult sampling_oracle_parallel(const Matrix& m, const OracleOptions& opt);

/// Raises UnboundedForm outside B_A.
double sampling_oracle(const SemiHilbertSpace& s, const Matrix& t, std::size_t samples,
                       std::uint64_t seed);
OracleResult sampling_oracle(const SemiHilbertSpace& s, const Matrix& t,
                             const OracleOptions& opt);

}  // namespace opradius
