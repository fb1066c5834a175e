#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mocorr/functional.hpp"
#include "mocorr/gev.hpp"
#include "mocorr/pair_sample.hpp"
#include "mocorr/quadrature.hpp"
#include "mocorr/rng.hpp"
#include "mocorr/stats.hpp"

namespace mocorr {

/// G_{zeta,gamma}(x,y) = C_{1-zeta,1-zeta}(G_gamma(x), G_gamma(y)): limit law
/// of two standardized block maxima whose blocks are offset by zeta r.
double limit_copula_cdf(const ZetaOverlap& z, const GEVShape& g, double x, double y);

/// Pairs from G_{zeta,gamma}: C_{1-zeta,1-zeta} pairs mapped through the
/// GEV quantile function.
PairSample sample_limit_pair(const ZetaOverlap& z, const GEVShape& g, std::size_t n,
                             const RngStream& rng);

/// Monte Carlo Var h(Y), Y ~ G_gamma.
Estimate sigma2_db(const Functional& h, const GEVShape& g, std::size_t n_mc,
                   const RngStream& rng);

/// Cov(1{Y1 > t}, 1{Y2 > t}) under G_{zeta,gamma}, by inclusion-exclusion on
/// limit_copula_cdf.
double indicator_cov(const ZetaOverlap& z, const GEVShape& g, double t);

/// 2 int_0^1 indicator_cov dzeta by the 1-D rule in `spec`.
double indicator_sigma2_sb(const GEVShape& g, double t, const QuadratureSpec& spec);

/// Closed forms for the indicator functional with a = G_gamma(t):
/// sigma2_db = a(1-a),  sigma2_sb = 2{a(a-1)/log(a) - a^2}.
double indicator_sigma2_db_closed(double a);
double indicator_sigma2_sb_closed(double a);

enum class VarianceMethod { quadrature_mc, block_simulation };

struct ZetaRow {
  double zeta = 0.0;
  double weight = 0.0;  // quadrature weight (0 for the endpoint rows)
  Estimate cov;
  std::optional<Estimate> corr;  // empty when h(Y) is degenerate
};

struct VarianceReport {
  std::string functional;
  double gamma = 0.0;
  VarianceMethod method = VarianceMethod::quadrature_mc;
  Estimate sigma2_db;
  Estimate sigma2_sb;
  std::optional<double> ratio;  // sigma2_sb / sigma2_db; empty if degenerate
  double ratio_se = 0.0;
  bool degenerate = false;
  std::vector<ZetaRow> per_zeta;  // endpoints zeta = 0 and 1 included
  RngStream seed;
  std::size_t n = 0;
  std::size_t block_size = 0;  // r, block_simulation only
  std::size_t n_blocks = 0;

  /// sigma2_sb <= sigma2_db within `k` combined standard errors.
  bool inequality_holds(double k = 3.0) const;
  /// Corr(h(Y1), h(Y2)) <= 1 - zeta + k SE at every node.
  bool correlation_bound_holds(double k = 3.0) const;
};

inline constexpr std::size_t kDefaultVarianceSamples = 200000;

/// Quadrature over zeta of Monte Carlo covariances, using common random
/// numbers across nodes; sigma2_db comes from an independent sub-stream.
VarianceReport sigma2_sb(const Functional& h, const GEVShape& g,
                         const QuadratureSpec& zeta_quad, std::size_t n_mc,
                         const RngStream& rng);

QuadratureSpec default_zeta_quadrature();

nlohmann::ordered_json to_json(const VarianceReport& report);
/// `zeta,cov,se` rows for plotting.
std::string per_zeta_csv(const VarianceReport& report);

}  // namespace mocorr
