#include "mocorr/stats.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

namespace {

void require_size(std::size_t n, std::size_t min, const char* what) {
  if (n < min)
    throw ValidationError(
        fmt::format("{}: need at least {} observations, got {}", what, min, n));
}

void require_same(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw ValidationError(fmt::format("paired samples differ in length ({} vs {})",
                                      x.size(), y.size()));
}

// Mean and standard error of a sequence of influence values.
Estimate summarize(std::span<const double> psi, double value) {
  const double m = mean(psi);
  double ss = 0.0;
  for (double p : psi) ss += (p - m) * (p - m);
  const double n = static_cast<double>(psi.size());
  return {value, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

double mean(std::span<const double> x) {
  require_size(x.size(), 1, "mean");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  require_size(x.size(), 2, "variance");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

Estimate mean_with_se(std::span<const double> x) {
  require_size(x.size(), 2, "mean_with_se");
  return {mean(x), std::sqrt(variance(x) / static_cast<double>(x.size()))};
}

Estimate variance_with_se(std::span<const double> x) {
  require_size(x.size(), 2, "variance_with_se");
  const double m = mean(x);
  std::vector<double> psi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) psi[i] = (x[i] - m) * (x[i] - m);
  return summarize(psi, variance(x));
}

Estimate covariance_with_se(std::span<const double> x,
                            std::span<const double> y) {
  require_same(x, y);
  require_size(x.size(), 2, "covariance_with_se");
  const double mx = mean(x);
  const double my = mean(y);
  std::vector<double> psi(x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    psi[i] = (x[i] - mx) * (y[i] - my);
    s += psi[i];
  }
  return summarize(psi, s / static_cast<double>(x.size() - 1));
}

Estimate correlation_with_se(std::span<const double> x,
                             std::span<const double> y) {
  require_same(x, y);
  require_size(x.size(), 3, "correlation_with_se");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw NumericalError("correlation undefined for a constant sample");
  const double r = sxy / std::sqrt(sxx * syy);
  const double n = static_cast<double>(x.size());
  const double sx = std::sqrt(sxx / n);
  const double sy = std::sqrt(syy / n);
  std::vector<double> psi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = (x[i] - mx) / sx;
    const double b = (y[i] - my) / sy;
    psi[i] = a * b - 0.5 * r * (a * a + b * b);
  }
  return summarize(psi, r);
}

}  // namespace mocorr
