#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mocorr/rng.hpp"

namespace mocorr::cli {

struct VerifyOptions {
  RngStream rng{kDefaultSeed, 0};
  bool quick = false;
  // Test hook: replaces the copula in the max-stability check with a
  // perturbed cdf that is not max-stable, so that check must fail.
  bool inject_perturbation = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_verify(const VerifyOptions& options);

/// Fixed-width summary, one row per check.
std::string verify_table(const std::vector<CheckResult>& results);
nlohmann::ordered_json verify_json(const std::vector<CheckResult>& results,
                                   const VerifyOptions& options);

}  // namespace mocorr::cli
