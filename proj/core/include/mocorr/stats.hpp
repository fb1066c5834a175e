#pragma once

#include <span>

namespace mocorr {

/// A point estimate with its (asymptotic) standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

double mean(std::span<const double> x);

/// Unbiased sample variance; requires x.size() >= 2.
double variance(std::span<const double> x);

Estimate mean_with_se(std::span<const double> x);

/// Sample variance with the standard error sd((x - mean)^2) / sqrt(n).
Estimate variance_with_se(std::span<const double> x);

/// Sample covariance with influence-function standard error.
Estimate covariance_with_se(std::span<const double> x,
                            std::span<const double> y);

/// Pearson correlation with the distribution-free delta-method standard
/// error, based on the influence function
///   x~ y~ - r (x~^2 + y~^2) / 2
/// of standardized variables. Throws NumericalError if either sample is
/// constant.
Estimate correlation_with_se(std::span<const double> x,
                             std::span<const double> y);

}  // namespace mocorr
