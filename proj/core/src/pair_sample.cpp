#include "mocorr/pair_sample.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::mo: return "mo";
    case Family::copula: return "copula";
    case Family::d_xi: return "d_xi";
    case Family::limit_gev: return "limit_gev";
    case Family::gaussian: return "gaussian";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::mo, Family::copula, Family::d_xi, Family::limit_gev,
                   Family::gaussian})
    if (to_string(f) == name) return f;
  throw ValidationError(fmt::format(
      "unknown family '{}' (expected mo, copula, d_xi, limit_gev or gaussian)",
      name));
}

GaussianParams::GaussianParams(double rho) : rho_(rho) {
  if (!(rho > -1.0 && rho < 1.0))
    throw ValidationError(fmt::format("rho must lie in (-1,1), got {}", rho));
}

PairSample PairSample::swapped() const {
  PairSample out = *this;
  std::swap(out.first, out.second);
  return out;
}

void PairSample::validate() const {
  if (first.size() != second.size())
    throw ValidationError("pair sample columns differ in length");
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double a = first[i];
    const double b = second[i];
    if (copula_scale()) {
      if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
        throw ValidationError(fmt::format(
            "pair {} = ({}, {}) lies outside [0,1]^2", i, a, b));
    } else if (family == Family::mo) {
      if (!(a >= 0.0 && b >= 0.0))
        throw ValidationError(
            fmt::format("pair {} = ({}, {}) has a negative coordinate", i, a, b));
    } else if (std::isnan(a) || std::isnan(b)) {
      throw ValidationError(fmt::format("pair {} is NaN", i));
    }
  }
}

nlohmann::ordered_json params_to_json(const FamilyParams& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MOParams>) {
          j["lambda1"] = p.lambda1();
          j["lambda2"] = p.lambda2();
          j["lambda12"] = p.lambda12();
        } else if constexpr (std::is_same_v<T, CopulaParams>) {
          j["phi"] = p.phi();
          j["psi"] = p.psi();
        } else if constexpr (std::is_same_v<T, DXiParam>) {
          j["xi"] = p.xi();
        } else if constexpr (std::is_same_v<T, LimitParams>) {
          j["zeta"] = p.zeta.zeta();
          j["gamma"] = p.shape.gamma();
        } else {
          j["rho"] = p.rho();
        }
      },
      params);
  return j;
}

std::string sample_csv(const PairSample& sample) {
  std::string out = sample.family == Family::mo || sample.family == Family::limit_gev
                        ? "x1,x2\n"
                        : "u,v\n";
  out.reserve(out.size() + sample.size() * 48);
  for (std::size_t i = 0; i < sample.size(); ++i)
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g}\n",
                   sample.first[i], sample.second[i]);
  return out;
}

nlohmann::ordered_json sample_metadata(const PairSample& sample) {
  nlohmann::ordered_json j;
  j["family"] = std::string(to_string(sample.family));
  j["params"] = params_to_json(sample.params);
  j["seed"] = sample.seed.seed;
  j["stream_id"] = sample.seed.stream_id;
  j["n"] = sample.size();
  return j;
}

void write_sample(const PairSample& sample, const std::filesystem::path& path) {
  {
    std::ofstream csv(path, std::ios::binary);
    if (!csv) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    csv << sample_csv(sample);
  }
  std::filesystem::path meta = path;
  meta += ".json";
  std::ofstream js(meta, std::ios::binary);
  if (!js) throw Error(fmt::format("cannot open '{}' for writing", meta.string()));
  js << sample_metadata(sample).dump(2) << '\n';
}

}  // namespace mocorr
