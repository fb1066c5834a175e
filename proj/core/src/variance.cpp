#include "mocorr/variance.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mocorr/error.hpp"
#include "mocorr/marshall_olkin.hpp"
#include "mocorr/parallel.hpp"
#include "mocorr/samplers.hpp"

namespace mocorr {

namespace {

constexpr std::uint64_t kPairTag = 1;
constexpr std::uint64_t kMarginalTag = 2;

CopulaParams limit_params(double zeta) { return CopulaParams(1.0 - zeta, 1.0 - zeta); }

struct Uniforms {
  std::vector<double> x, y, z;
};

Uniforms draw_uniforms(std::size_t n, const RngStream& rng) {
  Uniforms u{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for_each_chunk(chunk_count(n), [&](std::size_t c) {
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(n, lo + kChunkSize);
    for (std::size_t i = lo; i < hi; ++i) {
      auto e = rng.slot(i);
      u.x[i] = e.uniform();
      u.y[i] = e.uniform();
      u.z[i] = e.uniform();
    }
  });
  return u;
}

bool constant_values(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

}  // namespace

double limit_copula_cdf(const ZetaOverlap& z, const GEVShape& g, double x, double y) {
  return copula_cdf(limit_params(z.zeta()), gev_cdf(g, x), gev_cdf(g, y));
}

PairSample sample_limit_pair(const ZetaOverlap& z, const GEVShape& g, std::size_t n,
                             const RngStream& rng) {
  PairSample s = sample_copula(limit_params(z.zeta()), n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    s.first[i] = gev_quantile(g, s.first[i]);
    s.second[i] = gev_quantile(g, s.second[i]);
  }
  s.family = Family::limit_gev;
  s.params = LimitParams{z, g};
  return s;
}

Estimate sigma2_db(const Functional& h, const GEVShape& g, std::size_t n_mc,
                   const RngStream& rng) {
  if (n_mc < 2) throw ValidationError("sigma2_db: n_mc must be >= 2");
  check_moments(h, g);
  std::vector<double> values(n_mc);
  for_each_chunk(chunk_count(n_mc), [&](std::size_t c) {
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(n_mc, lo + kChunkSize);
    for (std::size_t i = lo; i < hi; ++i)
      values[i] = h(gev_quantile(g, rng.slot(i).uniform()), g);
  });
  if (constant_values(values)) return {0.0, 0.0};
  return variance_with_se(values);
}

double indicator_cov(const ZetaOverlap& z, const GEVShape& g, double t) {
  const double a = gev_cdf(g, t);
  const double both_exceed = 1.0 - 2.0 * a + limit_copula_cdf(z, g, t, t);
  return both_exceed - (1.0 - a) * (1.0 - a);
}

double indicator_sigma2_sb(const GEVShape& g, double t, const QuadratureSpec& spec) {
  return 2.0 * quad_1d([&](double zeta) { return indicator_cov(ZetaOverlap(zeta), g, t); },
                       spec);
}

double indicator_sigma2_db_closed(double a) { return a * (1.0 - a); }

double indicator_sigma2_sb_closed(double a) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return 2.0 * (a * (a - 1.0) / std::log(a) - a * a);
}

bool VarianceReport::inequality_holds(double k) const {
  if (degenerate) return true;
  return sigma2_sb.value <= sigma2_db.value + k * std::hypot(sigma2_sb.se, sigma2_db.se);
}

bool VarianceReport::correlation_bound_holds(double k) const {
  return std::all_of(per_zeta.begin(), per_zeta.end(), [k](const ZetaRow& row) {
    return !row.corr || row.corr->value <= 1.0 - row.zeta + k * row.corr->se;
  });
}

QuadratureSpec default_zeta_quadrature() {
  return {QuadratureRule::gauss_legendre, 32, 1};
}

VarianceReport sigma2_sb(const Functional& h, const GEVShape& g,
                         const QuadratureSpec& zeta_quad, std::size_t n_mc,
                         const RngStream& rng) {
  zeta_quad.validate();
  if (n_mc < 3) throw ValidationError("sigma2_sb: n_mc must be >= 3");
  check_moments(h, g);

  VarianceReport report;
  report.functional = h.name();
  report.gamma = g.gamma();
  report.method = VarianceMethod::quadrature_mc;
  report.seed = rng;
  report.n = n_mc;
  report.sigma2_db = sigma2_db(h, g, n_mc, rng.split(kMarginalTag));

  const Uniforms uni = draw_uniforms(n_mc, rng.split(kPairTag));
  const auto rule = composite_rule(zeta_quad.nodes_per_axis, zeta_quad.subdivisions, 0.0, 1.0);

  std::vector<double> h1(n_mc), h2(n_mc), influence(n_mc, 0.0);
  auto evaluate_node = [&](double zeta) {
    const CopulaParams c = limit_params(zeta);
    for_each_chunk(chunk_count(n_mc), [&](std::size_t chunk) {
      const std::size_t lo = chunk * kChunkSize;
      const std::size_t hi = std::min(n_mc, lo + kChunkSize);
      for (std::size_t i = lo; i < hi; ++i) {
        const auto [u, v] = copula_pair(c, uni.x[i], uni.y[i], uni.z[i]);
        h1[i] = h(gev_quantile(g, u), g);
        h2[i] = h(gev_quantile(g, v), g);
      }
    });
  };

  auto make_row = [&](double zeta, double weight) {
    evaluate_node(zeta);
    ZetaRow row{zeta, weight, covariance_with_se(h1, h2), std::nullopt};
    if (!constant_values(h1) && !constant_values(h2))
      row.corr = correlation_with_se(h1, h2);
    return row;
  };

  report.per_zeta.push_back(make_row(0.0, 0.0));
  report.degenerate = constant_values(h1);

  double total = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double zeta = rule.nodes[q];
    ZetaRow row = make_row(zeta, rule.weights[q]);
    total += 2.0 * rule.weights[q] * row.cov.value;
    const double m1 = mean(h1);
    const double m2 = mean(h2);
    for (std::size_t i = 0; i < n_mc; ++i)
      influence[i] += 2.0 * rule.weights[q] * (h1[i] - m1) * (h2[i] - m2);
    report.per_zeta.push_back(std::move(row));
  }
  report.per_zeta.push_back(make_row(1.0, 0.0));

  report.sigma2_sb = {total, mean_with_se(influence).se};
  if (report.degenerate) {
    report.sigma2_sb = {0.0, 0.0};
    report.sigma2_db = {0.0, 0.0};
  } else {
    const double ratio = report.sigma2_sb.value / report.sigma2_db.value;
    report.ratio = ratio;
    report.ratio_se =
        std::abs(ratio) * std::hypot(report.sigma2_sb.se / report.sigma2_sb.value,
                                     report.sigma2_db.se / report.sigma2_db.value);
  }
  return report;
}

namespace {

nlohmann::ordered_json estimate_json(const Estimate& e) {
  nlohmann::ordered_json j;
  j["value"] = e.value;
  j["se"] = e.se;
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const VarianceReport& report) {
  nlohmann::ordered_json j;
  j["functional"] = report.functional;
  j["gamma"] = report.gamma;
  j["method"] = report.method == VarianceMethod::quadrature_mc ? "quadrature_mc"
                                                               : "block_simulation";
  j["sigma2_db"] = estimate_json(report.sigma2_db);
  j["sigma2_sb"] = estimate_json(report.sigma2_sb);
  if (report.ratio)
    j["ratio"] = *report.ratio;
  else
    j["ratio"] = nullptr;
  j["ratio_se"] = report.ratio_se;
  j["degenerate"] = report.degenerate;
  j["inequality_holds"] = report.inequality_holds();
  j["seed"] = report.seed.seed;
  j["stream_id"] = report.seed.stream_id;
  j["n"] = report.n;
  if (report.method == VarianceMethod::block_simulation) {
    j["block_size"] = report.block_size;
    j["n_blocks"] = report.n_blocks;
  }
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.per_zeta) {
    nlohmann::ordered_json r;
    r["zeta"] = row.zeta;
    r["weight"] = row.weight;
    r["cov"] = row.cov.value;
    r["cov_se"] = row.cov.se;
    if (row.corr) {
      r["corr"] = row.corr->value;
      r["corr_se"] = row.corr->se;
    } else {
      r["corr"] = nullptr;
      r["corr_se"] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  j["per_zeta"] = std::move(rows);
  return j;
}

std::string per_zeta_csv(const VarianceReport& report) {
  std::string out = "zeta,cov,se\n";
  for (const auto& row : report.per_zeta)
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g},{:.17g}\n", row.zeta,
                   row.cov.value, row.cov.se);
  return out;
}

}  // namespace mocorr
