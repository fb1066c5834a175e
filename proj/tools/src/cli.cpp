#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mocorr/block_maxima.hpp"
#include "mocorr/error.hpp"
#include "mocorr/maxcorr.hpp"
#include "mocorr/normal.hpp"
#include "mocorr/parallel.hpp"
#include "mocorr/report.hpp"
#include "mocorr/samplers.hpp"
#include "mocorr/variance.hpp"
#include "verify.hpp"

namespace mocorr::cli {

namespace {

enum class Format { json, csv };

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string out = "-";
  std::optional<Format> format;
};

struct FamilyOptions {
  std::string family;
  std::optional<double> phi, psi, l1, l2, l12, xi, zeta, gamma, rho;
};

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
  cmd->add_option("--family", f.family, "mo | copula | d_xi | limit_gev | gaussian")
      ->required();
  cmd->add_option("--phi", f.phi, "copula: phi in [0,1]");
  cmd->add_option("--psi", f.psi, "copula: psi in [0,1]");
  cmd->add_option("--l1", f.l1, "mo: lambda1 > 0");
  cmd->add_option("--l2", f.l2, "mo: lambda2 > 0");
  cmd->add_option("--l12", f.l12, "mo: lambda12 > 0");
  cmd->add_option("--xi", f.xi, "d_xi: xi in (0,1]");
  cmd->add_option("--zeta", f.zeta, "limit_gev: block offset zeta in [0,1]");
  cmd->add_option("--gamma", f.gamma, "limit_gev: extreme value index");
  cmd->add_option("--rho", f.rho, "gaussian: correlation in (-1,1)");
}

double need(const std::optional<double>& value, const char* flag, Family family) {
  if (!value)
    throw ValidationError(
        fmt::format("family '{}' requires {}", to_string(family), flag));
  return *value;
}

FamilyParams build_params(const FamilyOptions& f, Family family) {
  switch (family) {
    case Family::mo:
      return MOParams(need(f.l1, "--l1", family), need(f.l2, "--l2", family),
                      need(f.l12, "--l12", family));
    case Family::copula:
      return CopulaParams(need(f.phi, "--phi", family), need(f.psi, "--psi", family));
    case Family::d_xi:
      return DXiParam(need(f.xi, "--xi", family));
    case Family::limit_gev:
      return LimitParams{ZetaOverlap(need(f.zeta, "--zeta", family)),
                         GEVShape(need(f.gamma, "--gamma", family))};
    case Family::gaussian:
      return GaussianParams(need(f.rho, "--rho", family));
  }
  throw ValidationError("unknown family");
}

PairSample draw_sample(Family family, const FamilyParams& params, std::size_t n,
                       const RngStream& rng) {
  switch (family) {
    case Family::mo: return sample_mo(std::get<MOParams>(params), n, rng);
    case Family::copula: return sample_copula(std::get<CopulaParams>(params), n, rng);
    case Family::d_xi: return sample_d_xi(std::get<DXiParam>(params), n, rng);
    case Family::limit_gev: {
      const auto& lp = std::get<LimitParams>(params);
      return sample_limit_pair(lp.zeta, lp.shape, n, rng);
    }
    case Family::gaussian: return sample_gaussian(std::get<GaussianParams>(params), n, rng);
  }
  throw ValidationError("unknown family");
}

double evaluate_cdf(Family family, const FamilyParams& params, double x, double y) {
  switch (family) {
    case Family::mo: return mo_cdf(std::get<MOParams>(params), x, y);
    case Family::copula: return copula_cdf(std::get<CopulaParams>(params), x, y);
    case Family::d_xi: return d_xi_cdf(std::get<DXiParam>(params), x, y);
    case Family::limit_gev: {
      const auto& lp = std::get<LimitParams>(params);
      return limit_copula_cdf(lp.zeta, lp.shape, x, y);
    }
    case Family::gaussian:
      return gaussian_copula_cdf(std::get<GaussianParams>(params).rho(), x, y);
  }
  throw ValidationError("unknown family");
}

// Writes a report to --out, or to `out` for "-".
void emit(const GlobalOptions& g, std::string_view text, std::ostream& out) {
  if (g.out == "-") {
    out << text;
    out.flush();
  } else {
    write_text(g.out, text);
  }
}

Format format_or(const GlobalOptions& g, Format fallback) {
  return g.format.value_or(fallback);
}

RngStream base_stream(const GlobalOptions& g) { return RngStream{g.seed, 0}; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Marshall-Olkin maximal correlation and sliding block maxima toolkit", "mocorr"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, fmt::format("RNG seed (default {})", kDefaultSeed))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = hardware concurrency)");
  app.add_option("--out", g.out, "output path, '-' for stdout");
  app.add_option("--format", g.format, "json | csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
  // Global flags are accepted after the subcommand name as well.
  app.fallthrough();

  int status = kExitOk;

  // sample
  auto* sample = app.add_subcommand("sample", "draw pairs; writes CSV plus a .json sidecar");
  FamilyOptions sample_family;
  std::size_t sample_n = 0;
  add_family_options(sample, sample_family);
  sample->add_option("--n", sample_n, "number of pairs")->required();
  sample->callback([&] {
    const Family family = parse_family(sample_family.family);
    const auto s = draw_sample(family, build_params(sample_family, family), sample_n,
                               base_stream(g));
    if (g.out != "-") {
      write_sample(s, g.out);
      return;
    }
    if (format_or(g, Format::csv) == Format::csv)
      emit(g, sample_csv(s), out);
    else
      emit(g, render_json(sample_metadata(s)), out);
  });

  // cdf-eval
  auto* cdf = app.add_subcommand("cdf-eval", "evaluate a family's joint cdf at points");
  FamilyOptions cdf_family;
  std::vector<double> cdf_x, cdf_y;
  add_family_options(cdf, cdf_family);
  cdf->add_option("--x", cdf_x, "first coordinates")->required();
  cdf->add_option("--y", cdf_y, "second coordinates")->required();
  cdf->callback([&] {
    const Family family = parse_family(cdf_family.family);
    const auto params = build_params(cdf_family, family);
    if (cdf_x.size() != cdf_y.size())
      throw ValidationError(fmt::format("--x has {} values but --y has {}", cdf_x.size(),
                                        cdf_y.size()));
    if (format_or(g, Format::json) == Format::csv) {
      std::string text = family == Family::mo ? "x,y,cdf,survival\n" : "x,y,cdf\n";
      for (std::size_t i = 0; i < cdf_x.size(); ++i) {
        fmt::format_to(std::back_inserter(text), "{:.17g},{:.17g},{:.17g}", cdf_x[i], cdf_y[i],
                       evaluate_cdf(family, params, cdf_x[i], cdf_y[i]));
        if (family == Family::mo)
          fmt::format_to(std::back_inserter(text), ",{:.17g}",
                         mo_survival(std::get<MOParams>(params), cdf_x[i], cdf_y[i]));
        text += '\n';
      }
      emit(g, text, out);
      return;
    }
    nlohmann::ordered_json j;
    j["family"] = std::string(to_string(family));
    j["params"] = params_to_json(params);
    auto points = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < cdf_x.size(); ++i) {
      nlohmann::ordered_json p;
      p["x"] = cdf_x[i];
      p["y"] = cdf_y[i];
      p["cdf"] = evaluate_cdf(family, params, cdf_x[i], cdf_y[i]);
      if (family == Family::mo)
        p["survival"] = mo_survival(std::get<MOParams>(params), cdf_x[i], cdf_y[i]);
      points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    emit(g, render_json(j), out);
  });

  // corr
  auto* corr = app.add_subcommand("corr", "closed-form correlations and maximal correlation");
  FamilyOptions corr_family;
  double corr_k = 1.0, corr_ell = 1.0;
  int corr_nodes = 32, corr_subdivisions = 8;
  add_family_options(corr, corr_family);
  corr->add_option("--k", corr_k, "power index k >= 0 (f_k(x) = x^{k+1})")->capture_default_str();
  corr->add_option("--ell", corr_ell, "power index l >= 0")->capture_default_str();
  corr->add_option("--nodes", corr_nodes, "Gauss-Legendre nodes per panel")->capture_default_str();
  corr->add_option("--subdivisions", corr_subdivisions, "panels per axis")->capture_default_str();
  corr->callback([&] {
    const Family family = parse_family(corr_family.family);
    const auto params = build_params(corr_family, family);
    nlohmann::ordered_json j;
    j["family"] = std::string(to_string(family));
    j["params"] = params_to_json(params);
    std::optional<CopulaParams> c;
    if (family == Family::copula) c = std::get<CopulaParams>(params);
    if (family == Family::mo) c = mo_to_copula(std::get<MOParams>(params));
    if (c) {
      const PowerIndex idx(corr_k, corr_ell);
      const QuadratureSpec spec{QuadratureRule::tensor_gauss_legendre, corr_nodes,
                                corr_subdivisions};
      spec.validate();
      if (family == Family::mo) {
        j["phi"] = c->phi();
        j["psi"] = c->psi();
      }
      j["k"] = idx.k();
      j["ell"] = idx.ell();
      j["power_cov"] = power_cov(*c, idx);
      j["power_cov_quadrature"] = hoeffding_power_cov(*c, idx, spec);
      j["power_corr"] = power_corr(*c, idx);
    } else if (family == Family::d_xi) {
      // f_{k xi} on the first coordinate, f_k on the second
      j["k"] = corr_k;
      j["d_xi_corr"] = d_xi_corr(std::get<DXiParam>(params), corr_k);
    }
    const auto closed = closed_form_max_corr(params);
    j["max_corr"] = closed ? nlohmann::ordered_json(*closed) : nlohmann::ordered_json(nullptr);
    emit(g, render_json(j), out);
  });

  // maxcorr
  auto* maxcorr = app.add_subcommand("maxcorr", "binned spectral estimate of maximal correlation");
  FamilyOptions mc_family;
  std::size_t mc_n = kDefaultMaxCorrSamples, mc_m = kDefaultGrid;
  double mc_tol = kDefaultSpectralTol;
  add_family_options(maxcorr, mc_family);
  maxcorr->add_option("--n", mc_n, "sample size (n >= 10 m^2)")->capture_default_str();
  maxcorr->add_option("--m", mc_m, "bins per axis")->capture_default_str();
  maxcorr->add_option("--tol", mc_tol, "power-iteration residual tolerance")->capture_default_str();
  maxcorr->callback([&] {
    const Family family = parse_family(mc_family.family);
    const auto params = build_params(mc_family, family);
    auto s = draw_sample(family, params, mc_n, base_stream(g));
    // Maximal correlation is invariant under the marginal transforms.
    const auto scaled = s.copula_scale() ? std::move(s) : to_copula_scale(s);
    auto report = maxcorr_report(scaled, estimate_max_corr(scaled, mc_m, mc_tol));
    report["family"] = std::string(to_string(family));
    report["params"] = params_to_json(params);
    emit(g, render_json(report), out);
  });

  // variance
  auto* variance = app.add_subcommand("variance", "sliding vs disjoint block maxima variance");
  double var_gamma = 0.0;
  std::string var_h = "identity";
  std::size_t var_n = kDefaultVarianceSamples;
  int var_nodes = 32;
  bool var_block = false;
  std::string var_dist;
  std::size_t var_r = 1000, var_blocks = 2000;
  // --h names the functional here, so help is --help only
  variance->set_help_flag("--help", "Print this help message and exit");
  variance->add_option("--gamma", var_gamma, "extreme value index")->required();
  variance->add_option("--h,--functional", var_h,
                       "identity | square | log | const | indicator:<t> | indicator:q<level>")
      ->capture_default_str();
  variance->add_option("--n-mc", var_n, "Monte Carlo pairs per zeta node")->capture_default_str();
  variance->add_option("--nodes", var_nodes, "Gauss-Legendre nodes over zeta")->capture_default_str();
  variance->add_flag("--block-sim", var_block, "also run the finite-r block simulation");
  variance->add_option("--dist", var_dist, "block simulation parent: exp | uniform | gumbel | pareto:<a>");
  variance->add_option("--r", var_r, "block length")->capture_default_str();
  variance->add_option("--n-blocks", var_blocks, "number of disjoint blocks")->capture_default_str();
  variance->callback([&] {
    const GEVShape shape(var_gamma);
    const auto h = Functional::parse(var_h, shape);
    const QuadratureSpec spec{QuadratureRule::gauss_legendre, var_nodes, 1};
    const auto report = sigma2_sb(h, shape, spec, var_n, base_stream(g));
    if (format_or(g, Format::json) == Format::csv) {
      emit(g, per_zeta_csv(report), out);
    } else {
      auto j = to_json(report);
      if (var_block) {
        const auto dist = BlockDistribution::parse(var_dist.empty() ? "exp" : var_dist);
        if (dist.limit_shape().gamma() != var_gamma)
          throw ValidationError(fmt::format(
              "--dist {} has extreme value index {}, but --gamma is {}", dist.name(),
              dist.limit_shape().gamma(), var_gamma));
        const RngStream rng = base_stream(g).split(17);
        nlohmann::ordered_json blocks;
        for (BlockMode mode : {BlockMode::disjoint, BlockMode::sliding})
          blocks[std::string(to_string(mode))] =
              to_json(block_maxima_simulate(dist, var_r, var_blocks, mode, h, rng), dist, h, rng);
        j["block_simulation"] = std::move(blocks);
      }
      emit(g, render_json(j), out);
    }
    const bool holds = report.inequality_holds() && report.correlation_bound_holds();
    err << fmt::format("{} sigma2_sb <= sigma2_db: {}\n", holds ? "PASS" : "FAIL",
                       report.ratio ? fmt::format("ratio {:.6f} +- {:.6f}", *report.ratio,
                                                  report.ratio_se)
                                    : std::string("degenerate (both variances 0)"));
    if (!holds) status = kExitCheckFailed;
  });

  // blocksim
  auto* blocksim = app.add_subcommand("blocksim", "finite-r block maxima variance simulation");
  std::string bs_dist = "exp", bs_mode = "disjoint", bs_h = "identity";
  std::size_t bs_r = 1000, bs_blocks = 2000;
  blocksim->set_help_flag("--help", "Print this help message and exit");
  blocksim->add_option("--dist", bs_dist, "exp | uniform | gumbel | pareto:<a>")->capture_default_str();
  blocksim->add_option("--mode", bs_mode, "disjoint | sliding")->capture_default_str();
  blocksim->add_option("--h,--functional", bs_h, "functional of the normalized maxima")
      ->capture_default_str();
  blocksim->add_option("--r", bs_r, "block length")->capture_default_str();
  blocksim->add_option("--n-blocks", bs_blocks, "number of disjoint blocks")->capture_default_str();
  blocksim->callback([&] {
    const auto dist = BlockDistribution::parse(bs_dist);
    const auto h = Functional::parse(bs_h, dist.limit_shape());
    const auto mode = parse_block_mode(bs_mode);
    const RngStream rng = base_stream(g);
    emit(g, render_json(to_json(block_maxima_simulate(dist, bs_r, bs_blocks, mode, h, rng), dist,
                                h, rng)),
         out);
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant battery");
  VerifyOptions vopt;
  verify->add_flag("--quick", vopt.quick, "reduced sample sizes and case counts");
  verify->add_flag("--inject-perturbation", vopt.inject_perturbation,
                   "test hook: break max-stability so the suite must fail")
      ->group("");
  verify->callback([&] {
    vopt.rng = base_stream(g);
    const auto results = run_verify(vopt);
    if (format_or(g, Format::csv) == Format::json)
      emit(g, render_json(verify_json(results, vopt)), out);
    else
      emit(g, verify_table(results), out);
    for (const auto& r : results)
      if (!r.passed) {
        err << fmt::format("failed: {}: {}\n", r.name, r.detail);
        status = kExitCheckFailed;
      }
  });

  app.parse_complete_callback([&] { set_thread_count(g.threads); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return status;
}

}  // namespace mocorr::cli
