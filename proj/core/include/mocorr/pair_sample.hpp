#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mocorr/gev.hpp"
#include "mocorr/marshall_olkin.hpp"
#include "mocorr/rng.hpp"

namespace mocorr {

enum class Family { mo, copula, d_xi, limit_gev, gaussian };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

struct LimitParams {
  ZetaOverlap zeta;
  GEVShape shape;
};

class GaussianParams {
 public:
  explicit GaussianParams(double rho);
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

using FamilyParams =
    std::variant<MOParams, CopulaParams, DXiParam, LimitParams, GaussianParams>;

/// Column-stored sample of pairs plus the metadata needed to regenerate it.
struct PairSample {
  std::vector<double> first;
  std::vector<double> second;
  Family family;
  FamilyParams params;
  RngStream seed;

  std::size_t size() const noexcept { return first.size(); }

  /// True for families whose coordinates live on [0,1].
  bool copula_scale() const noexcept {
    return family == Family::copula || family == Family::d_xi ||
           family == Family::gaussian;
  }

  /// Same sample with the coordinates exchanged.
  PairSample swapped() const;

  /// Throws ValidationError if a coordinate violates the family's domain.
  void validate() const;
};

/// Parameters as an ordered JSON object ({"phi":..,"psi":..} etc.).
nlohmann::ordered_json params_to_json(const FamilyParams& params);

/// Writes `<path>` as CSV (header `u,v` or `x1,x2`, %.17g values) and
/// `<path>.json` with family, parameters, seed and n.
void write_sample(const PairSample& sample, const std::filesystem::path& path);

/// CSV text only; used by write_sample and for hashing in tests.
std::string sample_csv(const PairSample& sample);
nlohmann::ordered_json sample_metadata(const PairSample& sample);

}  // namespace mocorr
