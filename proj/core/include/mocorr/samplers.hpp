#pragma once

#include <cstddef>
#include <utility>

#include "mocorr/pair_sample.hpp"

namespace mocorr {

/// Maps three independent uniforms to a C_{phi,psi} pair via
///   U = X^{1/(1-phi)} v Z^{1/phi},  V = Y^{1/(1-psi)} v Z^{1/psi}.
/// phi = 0 gives U = X and phi = 1 gives U = Z (likewise for psi).
std::pair<double, double> copula_pair(const CopulaParams& c, double x, double y,
                                      double z);

/// n iid Marshall-Olkin pairs from the shock construction.
PairSample sample_mo(const MOParams& p, std::size_t n, const RngStream& rng);

/// n iid pairs with distribution function C_{phi,psi}.
PairSample sample_copula(const CopulaParams& c, std::size_t n,
                         const RngStream& rng);

/// n iid pairs (X^{1/(1-xi)} v Z^{1/xi}, Z) with distribution function D_xi.
PairSample sample_d_xi(const DXiParam& d, std::size_t n, const RngStream& rng);

/// Bivariate normal pairs with correlation rho mapped to [0,1]^2 through Phi.
PairSample sample_gaussian(const GaussianParams& g, std::size_t n,
                           const RngStream& rng);

/// Transforms to [0,1]^2 where the family has a natural copula scale:
/// mo through the marginal survival functions (giving the survival copula),
/// limit_gev through G_gamma. Copula-scale samples are returned unchanged.
PairSample to_copula_scale(const PairSample& sample);

}  // namespace mocorr
