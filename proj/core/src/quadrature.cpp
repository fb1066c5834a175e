#include "mocorr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

void QuadratureSpec::validate() const {
  if (nodes_per_axis < 2)
    throw ValidationError(
        fmt::format("quadrature: nodes_per_axis must be >= 2, got {}",
                    nodes_per_axis));
  if (subdivisions < 1)
    throw ValidationError(fmt::format(
        "quadrature: subdivisions must be >= 1, got {}", subdivisions));
}

std::size_t QuadratureSpec::evaluation_count() const {
  const auto per_axis =
      static_cast<std::size_t>(nodes_per_axis) * static_cast<std::size_t>(subdivisions);
  return dimension() == 1 ? per_axis : per_axis * per_axis;
}

std::string_view to_string(QuadratureRule rule) {
  return rule == QuadratureRule::gauss_legendre ? "gauss-legendre"
                                                : "tensor-gauss-legendre";
}

QuadratureRule parse_quadrature_rule(std::string_view name) {
  if (name == "gauss-legendre") return QuadratureRule::gauss_legendre;
  if (name == "tensor-gauss-legendre")
    return QuadratureRule::tensor_gauss_legendre;
  throw ValidationError(fmt::format("unknown quadrature rule '{}'", name));
}

NodesAndWeights gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be positive");
  NodesAndWeights out;
  out.nodes.resize(n);
  out.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.nodes[i] = -x;
    out.nodes[n - 1 - i] = x;
    out.weights[i] = w;
    out.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) out.nodes[n / 2] = 0.0;
  return out;
}

NodesAndWeights composite_rule(int nodes_per_panel, int panels, double a,
                               double b) {
  const NodesAndWeights base = gauss_legendre(nodes_per_panel);
  NodesAndWeights out;
  out.nodes.reserve(static_cast<std::size_t>(nodes_per_panel) * panels);
  out.weights.reserve(out.nodes.capacity());
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    for (int i = 0; i < nodes_per_panel; ++i) {
      out.nodes.push_back(lo + half * (base.nodes[i] + 1.0));
      out.weights.push_back(half * base.weights[i]);
    }
  }
  return out;
}

namespace {

double checked(double value, double x, double y) {
  if (!std::isfinite(value))
    throw EvaluationError(
        fmt::format("non-finite integrand value {} at node ({:.17g}, {:.17g})",
                    value, x, y),
        x, y);
  return value;
}

}  // namespace

double quad_1d(const Integrand1D& f, const QuadratureSpec& spec, double a,
               double b) {
  spec.validate();
  const auto rule = composite_rule(spec.nodes_per_axis, spec.subdivisions, a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * checked(f(rule.nodes[i]), rule.nodes[i], 0.0);
  return sum;
}

double quad_2d(const Integrand2D& f, const QuadratureSpec& spec) {
  spec.validate();
  const auto rule =
      composite_rule(spec.nodes_per_axis, spec.subdivisions, 0.0, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    double row = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double v = rule.nodes[j];
      row += rule.weights[j] * checked(f(u, v), u, v);
    }
    total += rule.weights[i] * row;
  }
  return total;
}

double quad_2d_split(const Integrand2D& f, const Integrand1D& split,
                     const QuadratureSpec& spec) {
  spec.validate();
  const auto outer =
      composite_rule(spec.nodes_per_axis, spec.subdivisions, 0.0, 1.0);
  const auto base = gauss_legendre(spec.nodes_per_axis);
  double total = 0.0;
  for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
    const double u = outer.nodes[i];
    const double s = std::clamp(split(u), 0.0, 1.0);
    double inner = 0.0;
    for (const auto& [lo, hi] : {std::pair{0.0, s}, std::pair{s, 1.0}}) {
      if (hi <= lo) continue;
      const double width = (hi - lo) / spec.subdivisions;
      for (int p = 0; p < spec.subdivisions; ++p) {
        const double a = lo + p * width;
        const double half = 0.5 * width;
        for (std::size_t k = 0; k < base.nodes.size(); ++k) {
          const double v = a + half * (base.nodes[k] + 1.0);
          inner += half * base.weights[k] * checked(f(u, v), u, v);
        }
      }
    }
    total += outer.weights[i] * inner;
  }
  return total;
}

}  // namespace mocorr
