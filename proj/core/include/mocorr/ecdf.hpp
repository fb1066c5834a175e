#pragma once

#include "mocorr/marshall_olkin.hpp"
#include "mocorr/pair_sample.hpp"

namespace mocorr {

/// Two-dimensional Kolmogorov-Smirnov distance
///   max |F_n(p) - F(p)|
/// over the sample points p = (x_i, y_i) and the boundary points
/// (x_i, max y) and (max x, y_i). F_n is computed exactly by dominance
/// counting (sort + Fenwick tree), O(n log n).
double ecdf_ks(const PairSample& sample, const BivariateCdf& cdf);

}  // namespace mocorr
