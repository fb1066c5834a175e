#include "mocorr/binned_operator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

void BinnedOperator::validate() const {
  if (m < 1) throw ValidationError("binned operator: empty grid");
  if (joint_mass.size() != m * m || row_marginal.size() != m ||
      col_marginal.size() != m)
    throw ValidationError("binned operator: inconsistent dimensions");
  constexpr double kTol = 1e-12;
  double total = 0.0;
  std::vector<double> cols(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double p = mass(i, j);
      if (!(p >= 0.0))
        throw ValidationError(fmt::format("binned operator: negative mass at ({}, {})", i, j));
      row += p;
      cols[j] += p;
    }
    if (std::abs(row - row_marginal[i]) > kTol)
      throw ValidationError(fmt::format("binned operator: row {} sum mismatch", i));
    total += row;
  }
  for (std::size_t j = 0; j < m; ++j)
    if (std::abs(cols[j] - col_marginal[j]) > kTol)
      throw ValidationError(fmt::format("binned operator: column {} sum mismatch", j));
  if (std::abs(total - 1.0) > kTol)
    throw ValidationError(fmt::format("binned operator: total mass {} != 1", total));
}

BinnedOperator BinnedOperator::from_mass(std::size_t m, std::vector<double> mass) {
  if (mass.size() != m * m)
    throw ValidationError("binned operator: mass matrix must be m x m");
  double total = 0.0;
  for (double p : mass) {
    if (!(p >= 0.0)) throw ValidationError("binned operator: negative mass");
    total += p;
  }
  if (!(total > 0.0)) throw ValidationError("binned operator: zero total mass");
  BinnedOperator op;
  op.m = m;
  op.joint_mass = std::move(mass);
  op.row_marginal.assign(m, 0.0);
  op.col_marginal.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double& p = op.joint_mass[i * m + j];
      p /= total;
      op.row_marginal[i] += p;
      op.col_marginal[j] += p;
    }
  return op;
}

BinnedOperator bin_pairs(const PairSample& sample, std::size_t m) {
  if (m < 2) throw ValidationError(fmt::format("grid size m must be >= 2, got {}", m));
  if (sample.size() == 0) throw ValidationError("bin_pairs: empty sample");
  std::vector<std::size_t> counts(m * m, 0);
  auto cell = [m](double t) {
    return std::min(static_cast<std::size_t>(t * static_cast<double>(m)), m - 1);
  };
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const double u = sample.first[k];
    const double v = sample.second[k];
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
      throw ValidationError(fmt::format(
          "bin_pairs: pair {} = ({}, {}) outside [0,1]^2; transform to the "
          "copula scale first",
          k, u, v));
    ++counts[cell(u) * m + cell(v)];
  }
  std::vector<double> mass(m * m);
  std::transform(counts.begin(), counts.end(), mass.begin(),
                 [](std::size_t c) { return static_cast<double>(c); });
  return BinnedOperator::from_mass(m, std::move(mass));
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void remove_component(std::vector<double>& x, const std::vector<double>& unit) {
  const double c = dot(x, unit);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * unit[i];
}

}  // namespace

SpectralResult second_singular_value(const BinnedOperator& op, double tol,
                                     std::size_t max_iter) {
  op.validate();
  if (!(tol > 0.0)) throw ValidationError("second_singular_value: tol must be > 0");

  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < op.m; ++i)
    if (op.row_marginal[i] > 0.0) rows.push_back(i);
  for (std::size_t j = 0; j < op.m; ++j)
    if (op.col_marginal[j] > 0.0) cols.push_back(j);
  const std::size_t nr = rows.size();
  const std::size_t nc = cols.size();
  if (nr < 2 || nc < 2) return {0.0, 0.0, 0};

  std::vector<double> a(nr * nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      a[i * nc + j] = op.mass(rows[i], cols[j]) /
                      std::sqrt(op.row_marginal[rows[i]] * op.col_marginal[cols[j]]);

  std::vector<double> top(nc);
  for (std::size_t j = 0; j < nc; ++j) top[j] = std::sqrt(op.col_marginal[cols[j]]);
  const double top_norm = std::sqrt(dot(top, top));
  for (double& t : top) t /= top_norm;

  // Deterministic start with components along every smooth direction.
  std::vector<double> x(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(nc);
    x[j] = t - 0.5 + 0.25 * std::cos(7.0 * t) + 0.125 * std::sin(23.0 * t);
  }
  remove_component(x, top);
  double norm = std::sqrt(dot(x, x));
  if (norm == 0.0) x[0] = 1.0, remove_component(x, top), norm = std::sqrt(dot(x, x));
  for (double& v : x) v /= norm;

  std::vector<double> y(nr), z(nc);
  double lambda = 0.0;
  double residual = 0.0;
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    for (std::size_t i = 0; i < nr; ++i) {
      double s = 0.0;
      const double* row = &a[i * nc];
      for (std::size_t j = 0; j < nc; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
      const double* row = &a[i * nc];
      const double yi = y[i];
      for (std::size_t j = 0; j < nc; ++j) z[j] += row[j] * yi;
    }
    remove_component(z, top);
    lambda = dot(x, z);
    double r2 = 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
      const double d = z[j] - lambda * x[j];
      r2 += d * d;
    }
    residual = std::sqrt(r2);
    const double zn = std::sqrt(dot(z, z));
    if (residual <= tol || zn == 0.0) {
      return {std::clamp(std::sqrt(std::max(lambda, 0.0)), 0.0, 1.0), residual, iter};
    }
    for (std::size_t j = 0; j < nc; ++j) x[j] = z[j] / zn;
  }
  const double value = std::clamp(std::sqrt(std::max(lambda, 0.0)), 0.0, 1.0);
  throw ConvergenceError(
      fmt::format("power iteration did not converge in {} iterations "
                  "(value {:.6g}, residual {:.3g})",
                  max_iter, value, residual),
      value, residual, x);
}

}  // namespace mocorr
