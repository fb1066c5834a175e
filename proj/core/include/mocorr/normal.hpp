#pragma once

namespace mocorr {

double normal_cdf(double x);
double normal_quantile(double p);

/// P(X <= h, Y <= k) for a standard bivariate normal with correlation rho,
/// via Plackett's identity
///   Phi2(h,k;rho) = Phi(h)Phi(k) + int_0^rho phi2(h,k;r) dr
/// evaluated by composite Gauss-Legendre in r.
double bivariate_normal_cdf(double h, double k, double rho);

/// Gaussian copula C_rho(u,v) = Phi2(Phi^{-1}(u), Phi^{-1}(v); rho).
double gaussian_copula_cdf(double rho, double u, double v);

}  // namespace mocorr
