#pragma once

// Commutator bound for the Dirichlet Laplacian on the unit square. K is the
// 5-point finite-difference Laplacian with h = 1/N on the (N-1)^2 interior
// nodes, the metric is A = K, T = diag(V) and S = K^{-1} T. The bound checked
// is w_K(TS + ST) <= 2 sqrt(2) max|V| w_K(S).

#include <string>
#include <vector>

#include "opradius/functionals.hpp"

namespace opradius {

enum class Potential { sine, zero };

enum class EllipticRoute {
  analytic,  // closed-form sine eigenbasis of K
  dense,     // assembled K, generic space machinery, direct inverse
};

/// Largest supported matrix dimension (N-1)^2.
inline constexpr int kEllipticDimCap = 10000;

struct EllipticOptions {
  Potential potential = Potential::sine;
  EllipticRoute route = EllipticRoute::analytic;
  // Coarse sweep without refinement: the verdict uses the certified upper
  // bound grid_max / cos(pi / 16), and lhs is the best grid value.
  SweepOptions sweep{16, 2e-2, 0, false};
};

struct EllipticRow {
  int n = 0;
  int dim = 0;
  double max_v = 0.0;
  double w_s = 0.0;        // w_K(S)
  double lhs = 0.0;        // w_K(TS + ST), attained lower estimate
  double lhs_upper = 0.0;  // certified upper bound on w_K(TS + ST)
  double rhs = 0.0;
  bool satisfied = false;  // lhs_upper <= rhs (strict when rhs > 0)
  double seconds = 0.0;
};

/// Throws ConfigError when n < 3 or (n-1)^2 exceeds the dimension cap.
EllipticRow elliptic_row(int n, const EllipticOptions& opt = {});

/// 5-point Dirichlet Laplacian scaled by 1/h^2 (dense).
Matrix laplacian_2d(int n);
/// Grid samples of V at the interior nodes, x-index major.
RealVector potential_samples(int n, Potential p);

std::string to_string(Potential p);

}  // namespace opradius
