#include "mocorr/normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "mocorr/quadrature.hpp"

namespace mocorr {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double bivariate_normal_cdf(double h, double k, double rho) {
  if (std::isinf(h) || std::isinf(k)) {
    if (h == -HUGE_VAL || k == -HUGE_VAL) return 0.0;
    if (std::isinf(h) && std::isinf(k)) return 1.0;
    return std::isinf(h) ? normal_cdf(k) : normal_cdf(h);
  }
  static const NodesAndWeights rule = composite_rule(32, 4, 0.0, 1.0);
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rho * rule.nodes[i];
    const double s = 1.0 - r * r;
    integral += rule.weights[i] *
                std::exp(-(h * h - 2.0 * r * h * k + k * k) / (2.0 * s)) /
                std::sqrt(s);
  }
  integral *= rho / (2.0 * std::numbers::pi);
  return std::clamp(normal_cdf(h) * normal_cdf(k) + integral, 0.0, 1.0);
}

double gaussian_copula_cdf(double rho, double u, double v) {
  if (u <= 0.0 || v <= 0.0) return 0.0;
  if (u >= 1.0) return std::min(v, 1.0);
  if (v >= 1.0) return u;
  return bivariate_normal_cdf(normal_quantile(u), normal_quantile(v), rho);
}

}  // namespace mocorr
