#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace mocorr {

enum class QuadratureRule { gauss_legendre, tensor_gauss_legendre };

/// Composite Gauss-Legendre rule: `subdivisions` equal panels per axis with
/// `nodes_per_axis` nodes each.
struct QuadratureSpec {
  QuadratureRule rule = QuadratureRule::tensor_gauss_legendre;
  int nodes_per_axis = 32;
  int subdivisions = 8;

  void validate() const;
  int dimension() const {
    return rule == QuadratureRule::gauss_legendre ? 1 : 2;
  }
  /// (nodes_per_axis * subdivisions)^dimension
  std::size_t evaluation_count() const;
};

std::string_view to_string(QuadratureRule rule);
QuadratureRule parse_quadrature_rule(std::string_view name);

struct NodesAndWeights {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
NodesAndWeights gauss_legendre(int n);

/// Composite rule on [a, b].
NodesAndWeights composite_rule(int nodes_per_panel, int panels, double a,
                               double b);

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

double quad_1d(const Integrand1D& f, const QuadratureSpec& spec,
               double a = 0.0, double b = 1.0);

/// Tensor-product composite rule over [0,1]^2. Throws EvaluationError on a
/// non-finite integrand value.
double quad_2d(const Integrand2D& f, const QuadratureSpec& spec);

/// Iterated rule over [0,1]^2 for integrands with a derivative jump along a
/// curve v = split(u): for every outer node u, the inner integral over v is
/// taken separately on [0, split(u)] and [split(u), 1].
double quad_2d_split(const Integrand2D& f, const Integrand1D& split,
                     const QuadratureSpec& spec);

}  // namespace mocorr
