#include "mocorr/block_maxima.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "mocorr/error.hpp"
#include "mocorr/parallel.hpp"

namespace mocorr {

BlockDistribution BlockDistribution::parse(std::string_view spec) {
  if (spec == "exp" || spec == "exp1" || spec == "exp(1)") return {BlockDistKind::exp1, 0.0};
  if (spec == "uniform") return {BlockDistKind::uniform, 0.0};
  if (spec == "gumbel") return {BlockDistKind::gumbel, 0.0};
  constexpr std::string_view kPareto = "pareto:";
  if (spec.starts_with(kPareto)) {
    const std::string_view arg = spec.substr(kPareto.size());
    double alpha = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), alpha);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || !(alpha > 0.0))
      throw ValidationError(fmt::format("pareto tail index must be a positive number, got '{}'", arg));
    return {BlockDistKind::pareto, alpha};
  }
  throw ValidationError(fmt::format(
      "unknown distribution '{}' (expected exp, uniform, gumbel or pareto:<alpha>)", spec));
}

std::string BlockDistribution::name() const {
  switch (kind) {
    case BlockDistKind::exp1: return "exp";
    case BlockDistKind::uniform: return "uniform";
    case BlockDistKind::gumbel: return "gumbel";
    case BlockDistKind::pareto: return fmt::format("pareto:{}", alpha);
  }
  return "unknown";
}

GEVShape BlockDistribution::limit_shape() const {
  switch (kind) {
    case BlockDistKind::uniform: return GEVShape(-1.0);
    case BlockDistKind::pareto: return GEVShape(1.0 / alpha);
    default: return GEVShape(0.0);
  }
}

double BlockDistribution::scale(std::size_t r) const {
  const double rr = static_cast<double>(r);
  switch (kind) {
    case BlockDistKind::uniform: return 1.0 / rr;
    case BlockDistKind::pareto: return std::pow(rr, 1.0 / alpha) / alpha;
    default: return 1.0;
  }
}

double BlockDistribution::location(std::size_t r) const {
  const double rr = static_cast<double>(r);
  switch (kind) {
    case BlockDistKind::uniform: return 1.0 - 1.0 / rr;
    case BlockDistKind::pareto: return std::pow(rr, 1.0 / alpha);
    default: return std::log(rr);
  }
}

double BlockDistribution::draw(double u) const {
  switch (kind) {
    case BlockDistKind::exp1: return -std::log(u);
    case BlockDistKind::uniform: return u;
    case BlockDistKind::gumbel: return -std::log(-std::log(u));
    case BlockDistKind::pareto: return std::pow(u, -1.0 / alpha);
  }
  return u;
}

std::string_view to_string(BlockMode mode) {
  return mode == BlockMode::disjoint ? "disjoint" : "sliding";
}

BlockMode parse_block_mode(std::string_view name) {
  if (name == "disjoint") return BlockMode::disjoint;
  if (name == "sliding") return BlockMode::sliding;
  throw ValidationError(fmt::format("unknown block mode '{}' (expected disjoint or sliding)", name));
}

namespace {

std::vector<double> simulate_sequence(const BlockDistribution& dist, std::size_t len,
                                      const RngStream& rng) {
  std::vector<double> x(len);
  for_each_chunk(chunk_count(len), [&](std::size_t c) {
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(len, lo + kChunkSize);
    for (std::size_t t = lo; t < hi; ++t) x[t] = dist.draw(rng.slot(t).uniform());
  });
  return x;
}

double unbiased_variance_excluding(const std::vector<double>& v, std::size_t lo,
                                   std::size_t hi) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i < lo || i >= hi) s += v[i], ++n;
  const double m = s / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i < lo || i >= hi) ss += (v[i] - m) * (v[i] - m);
  return ss / static_cast<double>(n - 1);
}

// Delete-a-group jackknife standard error from leave-one-out replicates.
double jackknife_se(const std::vector<double>& replicates) {
  const double g = static_cast<double>(replicates.size());
  double m = 0.0;
  for (double r : replicates) m += r;
  m /= g;
  double ss = 0.0;
  for (double r : replicates) ss += (r - m) * (r - m);
  return std::sqrt((g - 1.0) / g * ss);
}

}  // namespace

std::vector<double> sliding_maxima(const std::vector<double>& x, std::size_t r) {
  if (r == 0 || r > x.size())
    throw ValidationError(fmt::format("window length {} outside [1, {}]", r, x.size()));
  std::vector<double> out;
  out.reserve(x.size() - r + 1);
  std::deque<std::size_t> window;
  for (std::size_t t = 0; t < x.size(); ++t) {
    while (!window.empty() && x[window.back()] <= x[t]) window.pop_back();
    window.push_back(t);
    if (window.front() + r <= t) window.pop_front();
    if (t + 1 >= r) out.push_back(x[window.front()]);
  }
  return out;
}


BlockSimResult block_maxima_simulate(const BlockDistribution& dist, std::size_t r,
                                     std::size_t n_blocks, BlockMode mode,
                                     const Functional& h, const RngStream& rng) {
  if (r < 1) throw ValidationError("block size r must be >= 1");
  if (n_blocks < 2) throw ValidationError("n_blocks must be >= 2");
  if (n_blocks > std::numeric_limits<std::size_t>::max() / r ||
      n_blocks * r > kMaxSequenceLength) {
    const std::size_t suggested = std::max<std::size_t>(2, kMaxSequenceLength / r);
    throw ValidationError(fmt::format(
        "sequence length r * n_blocks exceeds the cap of {} values; use n_blocks <= {} "
        "for r = {}",
        kMaxSequenceLength, suggested, r));
  }

  const GEVShape shape = dist.limit_shape();
  const double a = dist.scale(r);
  const double b = dist.location(r);
  const std::vector<double> x = simulate_sequence(dist, n_blocks * r, rng);

  BlockSimResult result;
  result.mode = mode;
  result.r = r;
  result.n_blocks = n_blocks;
  const std::size_t groups = std::min(kJackknifeGroups, n_blocks);

  if (mode == BlockMode::disjoint) {
    std::vector<double> values(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i) {
      const auto first = x.begin() + static_cast<std::ptrdiff_t>(i * r);
      values[i] = h((*std::max_element(first, first + static_cast<std::ptrdiff_t>(r)) - b) / a,
                    shape);
    }
    result.n_maxima = n_blocks;
    result.estimate.value = unbiased_variance_excluding(values, 0, 0);
    std::vector<double> reps(groups);
    for (std::size_t g = 0; g < groups; ++g)
      reps[g] = unbiased_variance_excluding(values, g * n_blocks / groups,
                                            (g + 1) * n_blocks / groups);
    result.estimate.se = jackknife_se(reps);
    return result;
  }

  const std::vector<double> maxima = sliding_maxima(x, r);
  const std::size_t w = maxima.size();
  result.n_maxima = w;
  std::vector<double> s(w);
  for (std::size_t t = 0; t < w; ++t) s[t] = h((maxima[t] - b) / a, shape);
  double mean_s = 0.0;
  for (double v : s) mean_s += v;
  mean_s /= static_cast<double>(w);

  // prefix[t] = sum_{i < t} (s_i - mean)
  std::vector<long double> prefix(w + 1, 0.0L);
  for (std::size_t t = 0; t < w; ++t) prefix[t + 1] = prefix[t] + (s[t] - mean_s);

  // q_t = (d_t^2 + 2 d_t sum_{l=1}^{r-1} d_{t+l}) / r for t + r <= w
  const std::size_t count = w - r + 1;
  std::vector<double> q(count);
  const double inv_r = 1.0 / static_cast<double>(r);
  for (std::size_t t = 0; t < count; ++t) {
    const double d = s[t] - mean_s;
    const double ahead = static_cast<double>(prefix[t + r] - prefix[t + 1]);
    q[t] = (d * d + 2.0 * d * ahead) * inv_r;
  }
  long double total = 0.0L;
  for (double v : q) total += v;
  result.estimate.value = static_cast<double>(total / static_cast<long double>(count));

  std::vector<double> reps(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t lo = g * count / groups;
    const std::size_t hi = (g + 1) * count / groups;
    long double part = 0.0L;
    for (std::size_t t = lo; t < hi; ++t) part += q[t];
    reps[g] = static_cast<double>((total - part) / static_cast<long double>(count - (hi - lo)));
  }
  result.estimate.se = jackknife_se(reps);
  return result;
}

nlohmann::ordered_json to_json(const BlockSimResult& result, const BlockDistribution& dist,
                               const Functional& h, const RngStream& rng) {
  nlohmann::ordered_json j;
  j["distribution"] = dist.name();
  j["gamma"] = dist.limit_shape().gamma();
  j["functional"] = h.name();
  j["mode"] = std::string(to_string(result.mode));
  j["r"] = result.r;
  j["n_blocks"] = result.n_blocks;
  j["n_maxima"] = result.n_maxima;
  j["estimate"] = result.estimate.value;
  j["se"] = result.estimate.se;
  j["seed"] = rng.seed;
  j["stream_id"] = rng.stream_id;
  return j;
}

}  // namespace mocorr
