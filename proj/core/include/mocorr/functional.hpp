#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mocorr/gev.hpp"

namespace mocorr {

enum class FunctionalKind { identity, square, log_transform, indicator, constant, table };

/// A functional h applied to GEV-distributed block maxima.
///
/// log_transform maps G_gamma to the Gumbel scale, log(1 + gamma x)/gamma,
/// so h(Y) has all moments for every gamma. table is piecewise linear
/// through (x, h) knots with constant extension beyond the ends.
class Functional {
 public:
  static Functional identity();
  static Functional square();
  static Functional log_transform();
  static Functional indicator(double threshold);
  /// Indicator of exceeding the level-q quantile of G_gamma.
  static Functional indicator_quantile(double q, const GEVShape& g);
  static Functional constant(double value = 1.0);
  static Functional table(std::vector<std::pair<double, double>> knots);

  /// "identity", "square", "log", "const", "indicator:<t>",
  /// "indicator:q<level>" (quantile of G_gamma).
  static Functional parse(std::string_view spec, const GEVShape& g);

  FunctionalKind kind() const noexcept { return kind_; }
  double threshold() const noexcept { return param_; }
  std::string name() const;

  double operator()(double x, const GEVShape& g) const;

  /// Analytic check of  int h^2 dG_gamma < infinity.
  bool square_integrable(const GEVShape& g) const;
  /// Analytic check of  int h^4 dG_gamma < infinity (needed for standard errors).
  bool fourth_moment_finite(const GEVShape& g) const;

 private:
  Functional(FunctionalKind kind, double param) : kind_(kind), param_(param) {}

  FunctionalKind kind_;
  double param_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

/// Throws DivergentMomentError (naming h and gamma) unless h(Y), Y ~ G_gamma,
/// has a finite fourth moment. The conditions are exact for every kind:
/// only identity and square are unbounded in x.
void check_moments(const Functional& h, const GEVShape& g);

}  // namespace mocorr
