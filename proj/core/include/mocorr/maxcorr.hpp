#pragma once

#include <cstddef>
#include <optional>

#include <nlohmann/json.hpp>

#include "mocorr/binned_operator.hpp"
#include "mocorr/marshall_olkin.hpp"
#include "mocorr/pair_sample.hpp"
#include "mocorr/quadrature.hpp"
#include "mocorr/rng.hpp"

namespace mocorr {

/// Exponents of the power family f_k(x) = x^{k+1}/(k+1); real-valued.
class PowerIndex {
 public:
  PowerIndex(double k, double ell);
  double k() const noexcept { return k_; }
  double ell() const noexcept { return ell_; }

 private:
  double k_;
  double ell_;
};

/// f_k(x) = x^{k+1} / (k+1)
double power_function(double k, double x);

/// Var f_k(U) = 1 / ((2k+3)(k+2)^2) for U standard uniform.
double var_fk(double k);

/// Cov(f_k(U), f_l(V)) for (U,V) ~ C_{phi,psi}:
///   phi psi / [(k+2)(l+2){(k+2) psi + (l+2) phi - phi psi}],
/// exactly 0 when phi psi = 0.
double power_cov(const CopulaParams& c, const PowerIndex& idx);

/// Corr(f_k(U), f_l(V)) = phi psi sqrt((2k+3)(2l+3)) / {(k+2) psi + (l+2) phi - phi psi}.
/// Along k = phi m, l = psi m this tends to sqrt(phi psi) as m -> infinity.
double power_corr(const CopulaParams& c, const PowerIndex& idx);

/// Hoeffding-formula oracle for power_cov:
///   int int {C(u,v) - uv} u^k v^l du dv
/// by iterated Gauss-Legendre split along the kink v = u^{phi/psi}.
double hoeffding_power_cov(const CopulaParams& c, const PowerIndex& idx,
                           const QuadratureSpec& spec = {});

/// Corr(f_{k xi}(S), f_k(T)) = xi sqrt((2k+3)(2k xi+3)) / (2k xi + xi + 2)
/// for (S,T) ~ D_xi; tends to sqrt(xi) as k -> infinity.
double d_xi_corr(const DXiParam& d, double k);

/// R(C_{phi,psi}) = sqrt(phi psi).
double max_corr_closed(const CopulaParams& c);

/// l12 / (sqrt(l1 + l12) sqrt(l2 + l12)), computed directly from the rates.
double mo_max_corr(const MOParams& p);

struct MaxCorrEstimate {
  double value = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  double residual = 0.0;
  std::size_t iterations = 0;
  RngStream seed;
};

inline constexpr std::size_t kDefaultGrid = 64;
inline constexpr std::size_t kDefaultMaxCorrSamples = 1000000;

/// Binned-spectral estimate of the maximal correlation of a copula-scale
/// sample. Requires n >= 10 m^2.
MaxCorrEstimate estimate_max_corr(const PairSample& sample,
                                  std::size_t m = kDefaultGrid,
                                  double tol = kDefaultSpectralTol);

/// Estimator run on Gaussian pairs with correlation rho; the target is |rho|.
MaxCorrEstimate gaussian_oracle(double rho, std::size_t n, std::size_t m,
                                const RngStream& rng);

/// Closed-form maximal correlation for a family, when one is known.
std::optional<double> closed_form_max_corr(const FamilyParams& params);

/// {family, params, n, m, estimate, closed_form, abs_error, seed}
nlohmann::ordered_json maxcorr_report(const PairSample& sample,
                                      const MaxCorrEstimate& est);

}  // namespace mocorr
