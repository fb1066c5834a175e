#include "mocorr/gev.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GEVShape::GEVShape(double gamma) : gamma_(gamma) {
  if (!std::isfinite(gamma))
    throw ValidationError(fmt::format("gamma must be finite, got {}", gamma));
}

double GEVShape::lower_endpoint() const {
  return gamma_ > 0.0 ? -1.0 / gamma_ : -kInf;
}

double GEVShape::upper_endpoint() const {
  return gamma_ < 0.0 ? -1.0 / gamma_ : kInf;
}

ZetaOverlap::ZetaOverlap(double zeta) : zeta_(zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0))
    throw ValidationError(fmt::format("zeta must lie in [0,1], got {}", zeta));
}

double gev_cdf(const GEVShape& g, double x) {
  const double gamma = g.gamma();
  if (std::isnan(x)) return x;
  if (gamma == 0.0) return std::exp(-std::exp(-x));
  const double t = 1.0 + gamma * x;
  if (t <= 0.0) return gamma > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::pow(t, -1.0 / gamma));
}

double gev_quantile(const GEVShape& g, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError(fmt::format("probability must lie in [0,1], got {}", p));
  if (p == 0.0) return g.lower_endpoint();
  if (p == 1.0) return g.upper_endpoint();
  const double e = -std::log(p);
  const double gamma = g.gamma();
  if (gamma == 0.0) return -std::log(e);
  return std::expm1(-gamma * std::log(e)) / gamma;
}

double gev_to_gumbel(const GEVShape& g, double x) {
  const double gamma = g.gamma();
  if (gamma == 0.0) return x;
  return std::log1p(gamma * x) / gamma;
}

}  // namespace mocorr
