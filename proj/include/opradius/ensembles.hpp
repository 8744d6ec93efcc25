#pragma once

// Seeded generators for metrics and for operators that satisfy the
// hypotheses of the catalog entries. Entries are complex Gaussian with
// E|z|^2 = 1. Structured families are lifts of compressed matrices, so their
// null-space blocks vanish (the A-unitary family keeps the identity there).

#include <cstdint>
#include <vector>

#include "opradius/space.hpp"

namespace opradius {

enum class RankPolicy { full, all };

struct EnsembleConfig {
  int dim_min = 2;
  int dim_max = 6;
  RankPolicy ranks = RankPolicy::all;
  std::uint64_t seed = 42;
  std::size_t trials = 1000;
};

/// Dimension and rank of trial t: dimensions cycle fastest, then ranks.
struct TrialShape {
  int dim;
  int rank;
};
TrialShape trial_shape(const EnsembleConfig& cfg, std::size_t trial);

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);
Vector random_vector(Eigen::Index dim, std::uint64_t seed);

/// GG* with G of shape dim x rank. Throws BadRank unless 1 <= rank <= dim.
Matrix random_psd(int dim, int rank, std::uint64_t seed);

Matrix random_in_BA(const SemiHilbertSpace& s, std::uint64_t seed);
Matrix random_a_selfadjoint(const SemiHilbertSpace& s, std::uint64_t seed);
Matrix random_a_positive(const SemiHilbertSpace& s, std::uint64_t seed);
Matrix random_a_unitary(const SemiHilbertSpace& s, std::uint64_t seed);
Matrix random_a_normal(const SemiHilbertSpace& s, std::uint64_t seed);

/// Rank-one lift u v*. With nilpotent set, v is orthogonal to u (r >= 2), so
/// w_A(T) = ||T||_A / 2.
Matrix random_rank_one(const SemiHilbertSpace& s, std::uint64_t seed, bool nilpotent);

/// T_j = lift(p_j(H)) for one Hermitian H and complex polynomials p_j of
/// degree <= r.
std::vector<Matrix> random_commuting_family(const SemiHilbertSpace& s, int n, std::uint64_t seed);

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
Matrix haar_unitary(Eigen::Index r, std::uint64_t seed);

}  // namespace opradius
