#pragma once

namespace mocorr {

/// Extreme value index of the standard GEV law
///   G_gamma(x) = exp{-(1 + gamma x)^{-1/gamma}},  1 + gamma x > 0,
/// with the Gumbel form exp{-e^{-x}} at gamma = 0.
class GEVShape {
 public:
  explicit GEVShape(double gamma);
  double gamma() const noexcept { return gamma_; }

  /// Lower / upper end of the support (+-infinity when unbounded).
  double lower_endpoint() const;
  double upper_endpoint() const;

 private:
  double gamma_;
};

/// Relative offset zeta of two overlapping blocks, zeta in [0,1].
class ZetaOverlap {
 public:
  explicit ZetaOverlap(double zeta);
  double zeta() const noexcept { return zeta_; }

 private:
  double zeta_;
};

double gev_cdf(const GEVShape& g, double x);

/// Quantile function; p in (0,1). p = 0 and p = 1 map to the endpoints.
double gev_quantile(const GEVShape& g, double p);

/// Transforms x to the Gumbel scale: log(1 + gamma x)/gamma (x when gamma=0).
double gev_to_gumbel(const GEVShape& g, double x);

}  // namespace mocorr
