#include "mocorr/marshall_olkin.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

namespace {

void require_rate(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0))
    throw ValidationError(
        fmt::format("{} must be a finite positive rate, got {}", name, value));
}

void require_unit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ValidationError(fmt::format("{} must lie in [0,1], got {}", name, value));
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0))
    throw ValidationError(fmt::format("{} must be >= 0, got {}", name, value));
}

}  // namespace

MOParams::MOParams(double lambda1, double lambda2, double lambda12)
    : lambda1_(lambda1), lambda2_(lambda2), lambda12_(lambda12) {
  require_rate(lambda1, "lambda1");
  require_rate(lambda2, "lambda2");
  require_rate(lambda12, "lambda12");
}

double MOParams::marginal_rate(int j) const {
  if (j == 1) return lambda1_ + lambda12_;
  if (j == 2) return lambda2_ + lambda12_;
  throw ValidationError(fmt::format("marginal index must be 1 or 2, got {}", j));
}

CopulaParams::CopulaParams(double phi, double psi) : phi_(phi), psi_(psi) {
  require_unit(phi, "phi");
  require_unit(psi, "psi");
}

DXiParam::DXiParam(double xi) : xi_(xi) {
  if (!(xi > 0.0 && xi <= 1.0))
    throw ValidationError(fmt::format("xi must lie in (0,1], got {}", xi));
}

double mo_survival(const MOParams& p, double x1, double x2) {
  require_nonnegative(x1, "x1");
  require_nonnegative(x2, "x2");
  return std::exp(-p.lambda1() * x1 - p.lambda2() * x2 -
                  p.lambda12() * std::max(x1, x2));
}

double mo_marginal_survival(const MOParams& p, int j, double x) {
  require_nonnegative(x, "x");
  return std::exp(-p.marginal_rate(j) * x);
}

double mo_cdf(const MOParams& p, double x1, double x2) {
  return 1.0 - mo_marginal_survival(p, 1, x1) - mo_marginal_survival(p, 2, x2) +
         mo_survival(p, x1, x2);
}

CopulaParams mo_to_copula(const MOParams& p) {
  return CopulaParams(p.lambda12() / (p.lambda1() + p.lambda12()),
                      p.lambda12() / (p.lambda2() + p.lambda12()));
}

double copula_cdf(const CopulaParams& c, double u, double v) {
  require_unit(u, "u");
  require_unit(v, "v");
  // std::pow(0, 0) == 1, which keeps C(0,v) = 0 and the margins exact.
  return std::min(std::pow(u, 1.0 - c.phi()) * v,
                  u * std::pow(v, 1.0 - c.psi()));
}

double copula_survival(const CopulaParams& c, double u, double v) {
  return 1.0 - u - v + copula_cdf(c, u, v);
}

double d_xi_cdf(const DXiParam& d, double u, double v) {
  require_unit(u, "u");
  require_unit(v, "v");
  return std::pow(u, 1.0 - d.xi()) * std::min(std::pow(u, d.xi()), v);
}

double max_stability_defect(const BivariateCdf& cdf, int m, int grid) {
  if (m < 1) throw ValidationError(fmt::format("m must be >= 1, got {}", m));
  if (grid < 2)
    throw ValidationError(fmt::format("grid must be >= 2, got {}", grid));
  const double inv_m = 1.0 / m;
  double defect = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double u = static_cast<double>(i) / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double v = static_cast<double>(j) / (grid - 1);
      const double lhs = cdf(u, v);
      const double rhs = std::pow(cdf(std::pow(u, inv_m), std::pow(v, inv_m)), m);
      defect = std::max(defect, std::abs(lhs - rhs));
    }
  }
  return defect;
}

double max_stability_defect(const CopulaParams& c, int m, int grid) {
  return max_stability_defect(
      [&c](double u, double v) { return copula_cdf(c, u, v); }, m, grid);
}

}  // namespace mocorr
