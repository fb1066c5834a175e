#include "mocorr/functional.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

Functional Functional::identity() { return {FunctionalKind::identity, 0.0}; }
Functional Functional::square() { return {FunctionalKind::square, 0.0}; }
Functional Functional::log_transform() { return {FunctionalKind::log_transform, 0.0}; }
Functional Functional::constant(double value) { return {FunctionalKind::constant, value}; }

Functional Functional::indicator(double threshold) {
  if (std::isnan(threshold)) throw ValidationError("indicator threshold is NaN");
  return {FunctionalKind::indicator, threshold};
}

Functional Functional::indicator_quantile(double q, const GEVShape& g) {
  if (!(q > 0.0 && q < 1.0))
    throw ValidationError(fmt::format("indicator quantile level must lie in (0,1), got {}", q));
  return indicator(gev_quantile(g, q));
}

Functional Functional::table(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw ValidationError("functional table needs at least one knot");
  std::sort(knots.begin(), knots.end());
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (knots[i].first == knots[i - 1].first)
      throw ValidationError(fmt::format("functional table has duplicate knot x = {}", knots[i].first));
  for (const auto& [x, y] : knots)
    if (!std::isfinite(x) || !std::isfinite(y))
      throw ValidationError("functional table knots must be finite");
  Functional f(FunctionalKind::table, 0.0);
  f.knots_ = std::move(knots);
  return f;
}

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ValidationError(fmt::format("cannot parse {} '{}'", what, text));
  return value;
}

}  // namespace

Functional Functional::parse(std::string_view spec, const GEVShape& g) {
  if (spec == "identity") return identity();
  if (spec == "square") return square();
  if (spec == "log" || spec == "log-transform" || spec == "log_transform")
    return log_transform();
  if (spec == "const" || spec == "constant") return constant();
  constexpr std::string_view kIndicator = "indicator:";
  if (spec.starts_with(kIndicator)) {
    std::string_view arg = spec.substr(kIndicator.size());
    if (arg.starts_with('q'))
      return indicator_quantile(parse_double(arg.substr(1), "quantile level"), g);
    return indicator(parse_double(arg, "indicator threshold"));
  }
  throw ValidationError(fmt::format(
      "unknown functional '{}' (expected identity, square, log, const, "
      "indicator:<t> or indicator:q<level>)",
      spec));
}

std::string Functional::name() const {
  switch (kind_) {
    case FunctionalKind::identity: return "identity";
    case FunctionalKind::square: return "square";
    case FunctionalKind::log_transform: return "log";
    case FunctionalKind::constant: return "const";
    case FunctionalKind::indicator: return fmt::format("indicator:{:.17g}", param_);
    case FunctionalKind::table: return fmt::format("table[{}]", knots_.size());
  }
  return "unknown";
}

double Functional::operator()(double x, const GEVShape& g) const {
  switch (kind_) {
    case FunctionalKind::identity: return x;
    case FunctionalKind::square: return x * x;
    case FunctionalKind::log_transform: return gev_to_gumbel(g, x);
    case FunctionalKind::constant: return param_;
    case FunctionalKind::indicator: return x > param_ ? 1.0 : 0.0;
    case FunctionalKind::table: {
      if (x <= knots_.front().first) return knots_.front().second;
      if (x >= knots_.back().first) return knots_.back().second;
      const auto it = std::upper_bound(
          knots_.begin(), knots_.end(), x,
          [](double value, const auto& knot) { return value < knot.first; });
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return 0.0;
}

// A GEV variable has finite p-th moment iff gamma < 1/p; |h(x)| grows like
// |x|^d for identity (d=1) and square (d=2).
bool Functional::square_integrable(const GEVShape& g) const {
  switch (kind_) {
    case FunctionalKind::identity: return g.gamma() < 0.5;
    case FunctionalKind::square: return g.gamma() < 0.25;
    default: return true;
  }
}

bool Functional::fourth_moment_finite(const GEVShape& g) const {
  switch (kind_) {
    case FunctionalKind::identity: return g.gamma() < 0.25;
    case FunctionalKind::square: return g.gamma() < 0.125;
    default: return true;
  }
}

void check_moments(const Functional& h, const GEVShape& g) {
  if (!h.square_integrable(g))
    throw DivergentMomentError(fmt::format(
        "functional '{}' is not square-integrable under G_gamma with gamma = {}",
        h.name(), g.gamma()));
  if (!h.fourth_moment_finite(g))
    throw DivergentMomentError(fmt::format(
        "functional '{}' has an infinite fourth moment under G_gamma with gamma = {}; "
        "standard errors would not exist",
        h.name(), g.gamma()));
}

}  // namespace mocorr
