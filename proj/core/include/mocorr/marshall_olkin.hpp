#pragma once

#include <functional>

namespace mocorr {

/// Shock rates of the bivariate Marshall-Olkin exponential law:
/// X1 = min(Z1, Z12), X2 = min(Z2, Z12) with Zj ~ Exp(lambda_j).
class MOParams {
 public:
  MOParams(double lambda1, double lambda2, double lambda12);

  double lambda1() const noexcept { return lambda1_; }
  double lambda2() const noexcept { return lambda2_; }
  double lambda12() const noexcept { return lambda12_; }

  /// Rate of the exponential marginal X_j, lambda_j + lambda12.
  double marginal_rate(int j) const;

 private:
  double lambda1_;
  double lambda2_;
  double lambda12_;
};

/// Exponents (phi, psi) of C(u,v) = min(u^{1-phi} v, u v^{1-psi}).
class CopulaParams {
 public:
  CopulaParams(double phi, double psi);

  double phi() const noexcept { return phi_; }
  double psi() const noexcept { return psi_; }

 private:
  double phi_;
  double psi_;
};

/// Exponent of D_xi(u,v) = u^{1-xi} min(u^xi, v), 0 < xi <= 1.
class DXiParam {
 public:
  explicit DXiParam(double xi);
  double xi() const noexcept { return xi_; }

 private:
  double xi_;
};

/// P(X1 > x1, X2 > x2) = exp{-l1 x1 - l2 x2 - l12 max(x1, x2)}.
double mo_survival(const MOParams& p, double x1, double x2);

/// P(X_j > x) = exp{-(l_j + l12) x}.
double mo_marginal_survival(const MOParams& p, int j, double x);

/// Joint distribution function P(X1 <= x1, X2 <= x2).
double mo_cdf(const MOParams& p, double x1, double x2);

/// Survival copula parameters: phi = l12/(l1+l12), psi = l12/(l2+l12).
CopulaParams mo_to_copula(const MOParams& p);

/// C_{phi,psi}(u,v) = min(u^{1-phi} v, u v^{1-psi}), with 0^0 = 1.
double copula_cdf(const CopulaParams& c, double u, double v);

/// P(U > u, V > v) = 1 - u - v + C(u,v).
double copula_survival(const CopulaParams& c, double u, double v);

double d_xi_cdf(const DXiParam& d, double u, double v);

using BivariateCdf = std::function<double(double, double)>;

/// max over a grid x grid lattice of [0,1]^2 of |C(u,v) - C(u^{1/m}, v^{1/m})^m|.
double max_stability_defect(const BivariateCdf& cdf, int m, int grid);
double max_stability_defect(const CopulaParams& c, int m, int grid);

}  // namespace mocorr
