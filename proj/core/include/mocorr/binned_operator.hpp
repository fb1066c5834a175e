#pragma once

#include <cstddef>
#include <vector>

#include "mocorr/pair_sample.hpp"

namespace mocorr {

/// Discretized joint law on an m x m equal-width grid of [0,1]^2.
struct BinnedOperator {
  std::size_t m = 0;
  std::vector<double> joint_mass;  // row-major, m*m
  std::vector<double> row_marginal;
  std::vector<double> col_marginal;

  double mass(std::size_t i, std::size_t j) const { return joint_mass[i * m + j]; }

  /// Checks nonnegativity, marginal consistency and unit total mass (1e-12).
  void validate() const;

  /// Builds an operator from an arbitrary nonnegative mass matrix (normalized
  /// to total mass 1; marginals derived from it).
  static BinnedOperator from_mass(std::size_t m, std::vector<double> mass);
};

/// Equal-width m x m histogram of a copula-scale sample, normalized to mass 1.
BinnedOperator bin_pairs(const PairSample& sample, std::size_t m);

struct SpectralResult {
  double value = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

inline constexpr double kDefaultSpectralTol = 1e-10;
inline constexpr std::size_t kDefaultSpectralMaxIter = 500000;

/// Second-largest singular value of A[i][j] = P[i][j] / sqrt(r_i c_j)
/// (rows/columns with zero marginal dropped). The top singular pair
/// (sqrt(r), sqrt(c)) with value 1 is known in closed form; power iteration
/// on A^T A is run on its orthogonal complement, re-orthogonalizing every
/// step. Stops when ||A^T A x - lambda x|| <= tol. Throws ConvergenceError
/// after max_iter steps.
SpectralResult second_singular_value(const BinnedOperator& op,
                                     double tol = kDefaultSpectralTol,
                                     std::size_t max_iter = kDefaultSpectralMaxIter);

}  // namespace mocorr
