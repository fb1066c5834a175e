#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mocorr/functional.hpp"
#include "mocorr/gev.hpp"
#include "mocorr/rng.hpp"
#include "mocorr/stats.hpp"

namespace mocorr {

enum class BlockDistKind { exp1, uniform, pareto, gumbel };

/// Parent distribution of the iid sequence plus its domain-of-attraction
/// normalization (M_r - b_r)/a_r -> G_gamma:
///   exp(1), gumbel:  a_r = 1,            b_r = log r,     gamma = 0
///   uniform:         a_r = 1/r,          b_r = 1 - 1/r,   gamma = -1
///   pareto(alpha):   a_r = r^{1/a}/a,    b_r = r^{1/a},   gamma = 1/alpha
struct BlockDistribution {
  BlockDistKind kind = BlockDistKind::exp1;
  double alpha = 0.0;  // pareto only

  static BlockDistribution parse(std::string_view spec);  // "exp", "uniform", "gumbel", "pareto:<alpha>"
  std::string name() const;
  GEVShape limit_shape() const;
  double scale(std::size_t r) const;     // a_r
  double location(std::size_t r) const;  // b_r
  /// Inverse-cdf draw from u in (0,1).
  double draw(double u) const;
};

enum class BlockMode { disjoint, sliding };

std::string_view to_string(BlockMode mode);
BlockMode parse_block_mode(std::string_view name);

struct BlockSimResult {
  Estimate estimate;
  BlockMode mode = BlockMode::disjoint;
  std::size_t r = 0;
  std::size_t n_blocks = 0;
  std::size_t n_maxima = 0;  // block maxima (disjoint) or windows (sliding)
};

/// Maxima of all windows [t, t + r), t = 0 .. x.size() - r (monotone deque).
std::vector<double> sliding_maxima(const std::vector<double>& x, std::size_t r);

/// Upper bound on n_blocks * r (sequence length held in memory).
inline constexpr std::size_t kMaxSequenceLength = std::size_t{1} << 27;
/// Jackknife groups for the standard error.
inline constexpr std::size_t kJackknifeGroups = 40;

/// Simulates an iid sequence of length n_blocks * r and estimates
///   disjoint: Var h((M_i - b_r)/a_r) over the n_blocks disjoint block maxima;
///   sliding:  (1/r) sum_{|l|<r} gamma_hat(l), gamma_hat the autocovariance of
///             h over all N - r + 1 sliding-window maxima. Up to edge terms
///             this is n_blocks * Var(sliding mean of h), the finite-r
///             analogue of 2 int_0^1 Cov(h(Y_1,zeta), h(Y_2,zeta)) dzeta.
/// The standard error is a delete-a-group jackknife over kJackknifeGroups
/// contiguous groups.
BlockSimResult block_maxima_simulate(const BlockDistribution& dist, std::size_t r,
                                     std::size_t n_blocks, BlockMode mode,
                                     const Functional& h, const RngStream& rng);

nlohmann::ordered_json to_json(const BlockSimResult& result,
                               const BlockDistribution& dist, const Functional& h,
                               const RngStream& rng);

}  // namespace mocorr
