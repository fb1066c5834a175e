#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "mocorr/ecdf.hpp"
#include "mocorr/error.hpp"
#include "mocorr/functional.hpp"
#include "mocorr/marshall_olkin.hpp"
#include "mocorr/maxcorr.hpp"
#include "mocorr/normal.hpp"
#include "mocorr/samplers.hpp"
#include "mocorr/variance.hpp"

namespace mocorr::cli {

namespace {

// Sequential parameter draws from a dedicated sub-stream.
class Draws {
 public:
  explicit Draws(const RngStream& rng) : engine_(rng.slot(0)) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * engine_.uniform(); }

 private:
  CounterEngine engine_;
};

CheckResult copula_axioms(const VerifyOptions& o) {
  Draws draws(o.rng.split(1));
  const int params = 20;
  const int rectangles = o.quick ? 1000 : 10000;
  double worst_mass = INFINITY;
  double worst_bound = 0.0;
  for (int p = 0; p < params; ++p) {
    const CopulaParams c(draws.uniform(0, 1), draws.uniform(0, 1));
    for (int r = 0; r < rectangles; ++r) {
      double u1 = draws.uniform(0, 1), u2 = draws.uniform(0, 1);
      double v1 = draws.uniform(0, 1), v2 = draws.uniform(0, 1);
      if (u1 > u2) std::swap(u1, u2);
      if (v1 > v2) std::swap(v1, v2);
      worst_mass = std::min(worst_mass, copula_cdf(c, u2, v2) - copula_cdf(c, u1, v2) -
                                            copula_cdf(c, u2, v1) + copula_cdf(c, u1, v1));
    }
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double u = i / 20.0, v = j / 20.0;
        const double value = copula_cdf(c, u, v);
        worst_bound = std::max({worst_bound, std::max(u + v - 1.0, 0.0) - value,
                                value - std::min(u, v)});
      }
  }
  return {"copula-axioms", worst_mass >= -1e-12 && worst_bound <= 1e-15,
          fmt::format("min rectangle mass {:.3e}, max Frechet violation {:.3e}", worst_mass,
                      worst_bound)};
}

CheckResult max_stability(const VerifyOptions& o) {
  Draws draws(o.rng.split(2));
  const int grid = o.quick ? 51 : 101;
  double worst = 0.0;
  for (int p = 0; p < 10; ++p) {
    const CopulaParams c(draws.uniform(0, 1), draws.uniform(0, 1));
    BivariateCdf cdf = [c](double u, double v) { return copula_cdf(c, u, v); };
    if (o.inject_perturbation)
      cdf = [c](double u, double v) {
        return copula_cdf(c, u, v) + 0.05 * u * (1 - u) * v * (1 - v);
      };
    for (int m : {2, 3, 5}) worst = std::max(worst, max_stability_defect(cdf, m, grid));
  }
  return {"max-stability", worst <= 1e-12, fmt::format("max defect {:.3e}", worst)};
}

CheckResult ks_samplers(const VerifyOptions& o) {
  Draws draws(o.rng.split(3));
  const std::size_t n = o.quick ? 20000 : 100000;
  // Critical value of the 2-D KS distance at these sizes, floored at 0.01.
  const double limit = std::max(0.01, 2.0 / std::sqrt(static_cast<double>(n)));
  const int per_family = o.quick ? 1 : 5;
  double worst = 0.0;
  std::string worst_family;
  std::uint64_t tag = 0;
  auto record = [&](const char* family, double d) {
    if (d > worst) worst = d, worst_family = family;
  };
  for (int p = 0; p < per_family; ++p) {
    const RngStream s = o.rng.split(300 + tag++);
    const CopulaParams c(draws.uniform(0, 1), draws.uniform(0, 1));
    record("copula", ecdf_ks(sample_copula(c, n, s),
                             [&](double u, double v) { return copula_cdf(c, u, v); }));
    const DXiParam d(draws.uniform(0.05, 1));
    record("d_xi", ecdf_ks(sample_d_xi(d, n, s.split(1)),
                           [&](double u, double v) { return d_xi_cdf(d, u, v); }));
    const MOParams mo(draws.uniform(0.2, 3), draws.uniform(0.2, 3), draws.uniform(0.2, 3));
    record("mo", ecdf_ks(sample_mo(mo, n, s.split(2)),
                         [&](double a, double b) { return mo_cdf(mo, a, b); }));
    const ZetaOverlap z(draws.uniform(0, 1));
    const GEVShape g(draws.uniform(-0.5, 0.5));
    record("limit_gev", ecdf_ks(sample_limit_pair(z, g, n, s.split(3)), [&](double a, double b) {
             return limit_copula_cdf(z, g, a, b);
           }));
    const GaussianParams gp(draws.uniform(-0.9, 0.9));
    record("gaussian", ecdf_ks(sample_gaussian(gp, n, s.split(4)), [&](double u, double v) {
             return gaussian_copula_cdf(gp.rho(), u, v);
           }));
  }
  return {"ks-samplers", worst < limit,
          fmt::format("max KS distance {:.4f} ({}) < {:.4f} at n = {}", worst, worst_family,
                      limit, n)};
}

CheckResult mo_closed_form(const VerifyOptions& o) {
  Draws draws(o.rng.split(4));
  double worst = 0.0;
  for (int p = 0; p < 10; ++p) {
    const MOParams mo(draws.uniform(0.05, 10), draws.uniform(0.05, 10), draws.uniform(0.05, 10));
    const double direct = mo.lambda12() / (std::sqrt(mo.lambda1() + mo.lambda12()) *
                                           std::sqrt(mo.lambda2() + mo.lambda12()));
    worst = std::max(worst, std::abs(max_corr_closed(mo_to_copula(mo)) - direct));
  }
  return {"mo-closed-form", worst <= 1e-12, fmt::format("max deviation {:.3e}", worst)};
}

CheckResult power_cov_quadrature(const VerifyOptions& o) {
  Draws draws(o.rng.split(5));
  double worst = 0.0;
  for (int p = 0; p < (o.quick ? 5 : 20); ++p) {
    const CopulaParams c(draws.uniform(0.05, 0.95), draws.uniform(0.05, 0.95));
    const PowerIndex idx(draws.uniform(0, 5), draws.uniform(0, 5));
    worst = std::max(worst, std::abs(power_cov(c, idx) - hoeffding_power_cov(c, idx)));
  }
  return {"power-cov-quadrature", worst <= 1e-8,
          fmt::format("max |closed form - quadrature| {:.3e}", worst)};
}

CheckResult d_xi_limit(const VerifyOptions&) {
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double xi = i / 10.0;
    worst = std::max(worst, std::abs(d_xi_corr(DXiParam(xi), 1e6) - std::sqrt(xi)));
  }
  return {"d-xi-limit", worst <= 1e-4,
          fmt::format("max |corr(k = 1e6) - sqrt(xi)| {:.3e}", worst)};
}

CheckResult estimator_copula(const VerifyOptions& o) {
  Draws draws(o.rng.split(6));
  double worst = 0.0;
  for (int p = 0; p < (o.quick ? 2 : 5); ++p) {
    const CopulaParams c(draws.uniform(0.05, 0.95), draws.uniform(0.05, 0.95));
    const auto s = sample_copula(c, kDefaultMaxCorrSamples, o.rng.split(600 + p));
    worst = std::max(worst, std::abs(estimate_max_corr(s).value - max_corr_closed(c)));
  }
  return {"estimator-copula", worst <= 0.02,
          fmt::format("max |estimate - sqrt(phi psi)| {:.4f}", worst)};
}

CheckResult estimator_d_xi(const VerifyOptions& o) {
  double worst = 0.0;
  std::uint64_t tag = 700;
  for (double xi : {0.25, 0.5, std::sqrt(0.5), 0.75}) {
    if (o.quick && xi != 0.5) continue;
    const auto s = sample_d_xi(DXiParam(xi), kDefaultMaxCorrSamples, o.rng.split(tag++));
    worst = std::max(worst, std::abs(estimate_max_corr(s).value - std::sqrt(xi)));
  }
  return {"estimator-d-xi", worst <= 0.02,
          fmt::format("max |estimate - sqrt(xi)| {:.4f}", worst)};
}

CheckResult gaussian(const VerifyOptions& o) {
  double worst = 0.0;
  std::uint64_t tag = 800;
  for (double rho : {-0.8, -0.3, 0.0, 0.3, 0.8}) {
    if (o.quick && rho != 0.3) continue;
    const auto est = gaussian_oracle(rho, kDefaultMaxCorrSamples, kDefaultGrid, o.rng.split(tag++));
    worst = std::max(worst, std::abs(est.value - std::abs(rho)));
  }
  return {"gaussian-oracle", worst <= 0.02,
          fmt::format("max |estimate - |rho|| {:.4f}", worst)};
}

CheckResult indicator_closed_form(const VerifyOptions&) {
  double worst = 0.0;
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const GEVShape g(0.0);
    const double t = gev_quantile(g, a);
    worst = std::max(worst, std::abs(indicator_sigma2_sb(g, t, default_zeta_quadrature()) -
                                     indicator_sigma2_sb_closed(a)));
  }
  return {"indicator-closed-form", worst <= 1e-9,
          fmt::format("max |quadrature - closed form| {:.3e}", worst)};
}

CheckResult variance_inequality(const VerifyOptions& o) {
  const std::size_t n = o.quick ? 20000 : kDefaultVarianceSamples;
  int cases = 0;
  std::string failures;
  double worst_ratio = 0.0;
  std::uint64_t tag = 900;
  for (double gamma : {-0.25, 0.0, 0.5}) {
    const GEVShape g(gamma);
    for (const char* spec : {"identity", "indicator:q0.9", "log"}) {
      const auto h = Functional::parse(spec, g);
      if (!h.fourth_moment_finite(g)) continue;
      const auto report = sigma2_sb(h, g, default_zeta_quadrature(), n, o.rng.split(tag++));
      ++cases;
      if (report.ratio) worst_ratio = std::max(worst_ratio, *report.ratio);
      if (!report.inequality_holds() || !report.correlation_bound_holds())
        failures += fmt::format(" {}@{}", spec, gamma);
    }
  }
  return {"variance-inequality", failures.empty(),
          failures.empty()
              ? fmt::format("{} cases, max ratio sigma2_sb/sigma2_db {:.4f}", cases, worst_ratio)
              : "violated for" + failures};
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  using Check = CheckResult (*)(const VerifyOptions&);
  const std::vector<std::pair<const char*, Check>> checks{
      {"copula-axioms", copula_axioms},
      {"max-stability", max_stability},
      {"ks-samplers", ks_samplers},
      {"mo-closed-form", mo_closed_form},
      {"power-cov-quadrature", power_cov_quadrature},
      {"d-xi-limit", d_xi_limit},
      {"estimator-copula", estimator_copula},
      {"estimator-d-xi", estimator_d_xi},
      {"gaussian-oracle", gaussian},
      {"indicator-closed-form", indicator_closed_form},
      {"variance-inequality", variance_inequality},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    try {
      results.push_back(check(options));
    } catch (const Error& e) {
      results.push_back({name, false, fmt::format("error: {}", e.what())});
    }
  }
  return results;
}

std::string verify_table(const std::vector<CheckResult>& results) {
  std::string out;
  std::size_t failed = 0;
  for (const auto& r : results) {
    fmt::format_to(std::back_inserter(out), "{:<4}  {:<22}  {}\n", r.passed ? "PASS" : "FAIL",
                   r.name, r.detail);
    failed += r.passed ? 0 : 1;
  }
  fmt::format_to(std::back_inserter(out), "{} of {} checks passed\n", results.size() - failed,
                 results.size());
  return out;
}

nlohmann::ordered_json verify_json(const std::vector<CheckResult>& results,
                                   const VerifyOptions& options) {
  nlohmann::ordered_json j;
  j["quick"] = options.quick;
  j["seed"] = options.rng.seed;
  j["all_passed"] = std::all_of(results.begin(), results.end(),
                                [](const CheckResult& r) { return r.passed; });
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json row;
    row["name"] = r.name;
    row["passed"] = r.passed;
    row["detail"] = r.detail;
    rows.push_back(std::move(row));
  }
  j["checks"] = std::move(rows);
  return j;
}

}  // namespace mocorr::cli
