#include "mocorr/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mocorr/error.hpp"

namespace mocorr {

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  std::size_t prefix(std::size_t i) const {  // count of entries <= i
    std::size_t s = 0;
    for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::size_t> tree_;
};

}  // namespace

double ecdf_ks(const PairSample& sample, const BivariateCdf& cdf) {
  const std::size_t n = sample.size();
  if (n == 0) throw ValidationError("ecdf_ks: empty sample");
  const auto& xs = sample.first;
  const auto& ys = sample.second;

  std::vector<double> y_sorted(ys);
  std::sort(y_sorted.begin(), y_sorted.end());
  y_sorted.erase(std::unique(y_sorted.begin(), y_sorted.end()), y_sorted.end());
  auto y_rank = [&](double y) {
    return static_cast<std::size_t>(
        std::lower_bound(y_sorted.begin(), y_sorted.end(), y) - y_sorted.begin());
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return xs[a] < xs[b] || (xs[a] == xs[b] && ys[a] < ys[b]);
  });

  const double inv_n = 1.0 / static_cast<double>(n);
  const double x_max = xs[order.back()];
  const double y_max = y_sorted.back();
  double stat = 0.0;

  Fenwick tree(y_sorted.size());
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && xs[order[j]] == xs[order[i]]) tree.add(y_rank(ys[order[j++]]));
    // every point with x <= x_i is now in the tree
    const double x = xs[order[i]];
    stat = std::max(stat, std::abs(static_cast<double>(j) * inv_n - cdf(x, y_max)));
    for (std::size_t k = i; k < j; ++k) {
      const double y = ys[order[k]];
      const double fn = static_cast<double>(tree.prefix(y_rank(y))) * inv_n;
      stat = std::max(stat, std::abs(fn - cdf(x, y)));
    }
    i = j;
  }

  // (x_max, y_k): F_n = #{y <= y_k} / n
  std::vector<double> y_all(ys);
  std::sort(y_all.begin(), y_all.end());
  for (std::size_t k = 0; k < n;) {
    std::size_t l = k;
    while (l < n && y_all[l] == y_all[k]) ++l;
    stat = std::max(stat, std::abs(static_cast<double>(l) * inv_n - cdf(x_max, y_all[k])));
    k = l;
  }
  return stat;
}

}  // namespace mocorr
