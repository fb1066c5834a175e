#include "mocorr/samplers.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mocorr/error.hpp"
#include "mocorr/normal.hpp"
#include "mocorr/parallel.hpp"

namespace mocorr {

namespace {

void require_n(std::size_t n) {
  if (n == 0) throw ValidationError("sample size n must be >= 1");
}

double mix_coordinate(double own, double common, double theta) {
  if (theta <= 0.0) return own;
  if (theta >= 1.0) return common;
  return std::max(std::pow(own, 1.0 / (1.0 - theta)),
                  std::pow(common, 1.0 / theta));
}

// Fills pairs [0, n) by calling draw(engine, i) for each index; engine is
// positioned at slot i so results do not depend on the thread count.
template <class Draw>
void fill_pairs(PairSample& s, std::size_t n, const RngStream& rng, Draw draw) {
  s.first.resize(n);
  s.second.resize(n);
  for_each_chunk(chunk_count(n), [&](std::size_t c) {
    const std::size_t lo = c * kChunkSize;
    const std::size_t hi = std::min(n, lo + kChunkSize);
    for (std::size_t i = lo; i < hi; ++i) {
      auto engine = rng.slot(i);
      std::tie(s.first[i], s.second[i]) = draw(engine);
    }
  });
}

}  // namespace

std::pair<double, double> copula_pair(const CopulaParams& c, double x, double y,
                                      double z) {
  return {mix_coordinate(x, z, c.phi()), mix_coordinate(y, z, c.psi())};
}

PairSample sample_mo(const MOParams& p, std::size_t n, const RngStream& rng) {
  require_n(n);
  PairSample s{{}, {}, Family::mo, p, rng};
  fill_pairs(s, n, rng, [&p](CounterEngine& e) {
    const double z1 = e.exponential(p.lambda1());
    const double z2 = e.exponential(p.lambda2());
    const double z12 = e.exponential(p.lambda12());
    return std::pair{std::min(z1, z12), std::min(z2, z12)};
  });
  return s;
}

PairSample sample_copula(const CopulaParams& c, std::size_t n,
                         const RngStream& rng) {
  require_n(n);
  PairSample s{{}, {}, Family::copula, c, rng};
  fill_pairs(s, n, rng, [&c](CounterEngine& e) {
    const double x = e.uniform();
    const double y = e.uniform();
    const double z = e.uniform();
    return copula_pair(c, x, y, z);
  });
  return s;
}

PairSample sample_d_xi(const DXiParam& d, std::size_t n, const RngStream& rng) {
  require_n(n);
  PairSample s{{}, {}, Family::d_xi, d, rng};
  fill_pairs(s, n, rng, [&d](CounterEngine& e) {
    const double x = e.uniform();
    const double z = e.uniform();
    return std::pair{mix_coordinate(x, z, d.xi()), z};
  });
  return s;
}

PairSample sample_gaussian(const GaussianParams& g, std::size_t n,
                           const RngStream& rng) {
  require_n(n);
  PairSample s{{}, {}, Family::gaussian, g, rng};
  const double rho = g.rho();
  const double tail = std::sqrt(1.0 - rho * rho);
  fill_pairs(s, n, rng, [rho, tail](CounterEngine& e) {
    const double a = e.normal();
    const double b = e.normal();
    return std::pair{normal_cdf(a), normal_cdf(rho * a + tail * b)};
  });
  return s;
}

PairSample to_copula_scale(const PairSample& sample) {
  if (sample.copula_scale()) return sample;
  PairSample out = sample;
  if (sample.family == Family::mo) {
    const auto& p = std::get<MOParams>(sample.params);
    const double r1 = p.marginal_rate(1);
    const double r2 = p.marginal_rate(2);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.first[i] = std::exp(-r1 * sample.first[i]);
      out.second[i] = std::exp(-r2 * sample.second[i]);
    }
  } else {
    const auto& p = std::get<LimitParams>(sample.params);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.first[i] = gev_cdf(p.shape, sample.first[i]);
      out.second[i] = gev_cdf(p.shape, sample.second[i]);
    }
  }
  out.family = Family::copula;
  if (sample.family == Family::mo) {
    out.params = mo_to_copula(std::get<MOParams>(sample.params));
  } else {
    const double phi = 1.0 - std::get<LimitParams>(sample.params).zeta.zeta();
    out.params = CopulaParams(phi, phi);
  }
  return out;
}

}  // namespace mocorr
