#include "mocorr/maxcorr.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mocorr/error.hpp"
#include "mocorr/samplers.hpp"

namespace mocorr {

PowerIndex::PowerIndex(double k, double ell) : k_(k), ell_(ell) {
  if (!(std::isfinite(k) && k >= 0.0))
    throw ValidationError(fmt::format("power index k must be finite and >= 0, got {}", k));
  if (!(std::isfinite(ell) && ell >= 0.0))
    throw ValidationError(
        fmt::format("power index ell must be finite and >= 0, got {}", ell));
}

double power_function(double k, double x) { return std::pow(x, k + 1.0) / (k + 1.0); }

double var_fk(double k) {
  if (!(k >= 0.0)) throw ValidationError(fmt::format("var_fk: k must be >= 0, got {}", k));
  return 1.0 / ((2.0 * k + 3.0) * (k + 2.0) * (k + 2.0));
}

double power_cov(const CopulaParams& c, const PowerIndex& idx) {
  const double phi = c.phi();
  const double psi = c.psi();
  if (phi * psi == 0.0) return 0.0;
  const double k2 = idx.k() + 2.0;
  const double l2 = idx.ell() + 2.0;
  return phi * psi / (k2 * l2 * (k2 * psi + l2 * phi - phi * psi));
}

double power_corr(const CopulaParams& c, const PowerIndex& idx) {
  const double phi = c.phi();
  const double psi = c.psi();
  if (phi * psi == 0.0) return 0.0;
  const double k = idx.k();
  const double l = idx.ell();
  return phi * psi * std::sqrt((2.0 * k + 3.0) * (2.0 * l + 3.0)) /
         ((k + 2.0) * psi + (l + 2.0) * phi - phi * psi);
}

double hoeffding_power_cov(const CopulaParams& c, const PowerIndex& idx,
                           const QuadratureSpec& spec) {
  const double phi = c.phi();
  const double psi = c.psi();
  const double k = idx.k();
  const double l = idx.ell();
  auto integrand = [&](double u, double v) {
    return (copula_cdf(c, u, v) - u * v) * std::pow(u, k) * std::pow(v, l);
  };
  // u^{1-phi} v <= u v^{1-psi}  <=>  v^psi <= u^phi
  auto kink = [phi, psi](double u) {
    if (psi == 0.0) return phi == 0.0 ? 0.0 : 1.0;
    return std::pow(u, phi / psi);
  };
  return quad_2d_split(integrand, kink, spec);
}

double d_xi_corr(const DXiParam& d, double k) {
  if (!(k >= 0.0)) throw ValidationError(fmt::format("d_xi_corr: k must be >= 0, got {}", k));
  const double xi = d.xi();
  return xi * std::sqrt((2.0 * k + 3.0) * (2.0 * k * xi + 3.0)) /
         (2.0 * k * xi + xi + 2.0);
}

double max_corr_closed(const CopulaParams& c) { return std::sqrt(c.phi() * c.psi()); }

double mo_max_corr(const MOParams& p) {
  return p.lambda12() /
         (std::sqrt(p.lambda1() + p.lambda12()) * std::sqrt(p.lambda2() + p.lambda12()));
}

MaxCorrEstimate estimate_max_corr(const PairSample& sample, std::size_t m,
                                  double tol) {
  if (!sample.copula_scale())
    throw ValidationError(fmt::format(
        "estimate_max_corr: family '{}' is not on the copula scale; transform "
        "it first",
        to_string(sample.family)));
  if (m < 2) throw ValidationError(fmt::format("grid size m must be >= 2, got {}", m));
  const std::size_t n = sample.size();
  if (n < 10 * m * m)
    throw ValidationError(fmt::format(
        "estimate_max_corr: need n >= 10 m^2 = {} samples for m = {}, got {}",
        10 * m * m, m, n));
  const BinnedOperator op = bin_pairs(sample, m);
  const SpectralResult r = second_singular_value(op, tol);
  return {r.value, m, n, r.residual, r.iterations, sample.seed};
}

MaxCorrEstimate gaussian_oracle(double rho, std::size_t n, std::size_t m,
                                const RngStream& rng) {
  return estimate_max_corr(sample_gaussian(GaussianParams(rho), n, rng), m);
}

std::optional<double> closed_form_max_corr(const FamilyParams& params) {
  return std::visit(
      [](const auto& p) -> std::optional<double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MOParams>) {
          return mo_max_corr(p);
        } else if constexpr (std::is_same_v<T, CopulaParams>) {
          return max_corr_closed(p);
        } else if constexpr (std::is_same_v<T, DXiParam>) {
          return std::sqrt(p.xi());
        } else if constexpr (std::is_same_v<T, LimitParams>) {
          return 1.0 - p.zeta.zeta();
        } else {
          return std::abs(p.rho());
        }
      },
      params);
}

nlohmann::ordered_json maxcorr_report(const PairSample& sample,
                                      const MaxCorrEstimate& est) {
  nlohmann::ordered_json j;
  j["family"] = std::string(to_string(sample.family));
  j["params"] = params_to_json(sample.params);
  j["n"] = est.n;
  j["m"] = est.m;
  j["estimate"] = est.value;
  const auto closed = closed_form_max_corr(sample.params);
  if (closed) {
    j["closed_form"] = *closed;
    j["abs_error"] = std::abs(est.value - *closed);
  } else {
    j["closed_form"] = nullptr;
    j["abs_error"] = nullptr;
  }
  j["residual"] = est.residual;
  j["iterations"] = est.iterations;
  j["seed"] = est.seed.seed;
  j["stream_id"] = est.seed.stream_id;
  return j;
}

}  // namespace mocorr
