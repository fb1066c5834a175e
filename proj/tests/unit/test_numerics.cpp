#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "mocorr/binned_operator.hpp"
#include "mocorr/ecdf.hpp"
#include "mocorr/error.hpp"
#include "mocorr/parallel.hpp"
#include "mocorr/quadrature.hpp"
#include "mocorr/rng.hpp"
#include "mocorr/samplers.hpp"
#include "mocorr/stats.hpp"
#include "test_support.hpp"

using namespace mocorr;
using mocorr::testing::CaseDraws;

namespace {

PairSample uniform_pairs(std::size_t n, std::uint64_t seed) {
  return sample_copula(CopulaParams(0.0, 0.0), n, RngStream{seed, 0});
}

PairSample from_points(std::vector<double> a, std::vector<double> b) {
  return PairSample{std::move(a), std::move(b), Family::copula, CopulaParams(0.0, 0.0),
                    RngStream{}};
}

// O(n^2) reference for ecdf_ks.
double brute_force_ks(const PairSample& s, const BivariateCdf& cdf) {
  const std::size_t n = s.size();
  const double x_max = *std::max_element(s.first.begin(), s.first.end());
  const double y_max = *std::max_element(s.second.begin(), s.second.end());
  auto fn = [&](double x, double y) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += (s.first[j] <= x && s.second[j] <= y);
    return static_cast<double>(c) / static_cast<double>(n);
  };
  double stat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stat = std::max(stat, std::abs(fn(s.first[i], s.second[i]) - cdf(s.first[i], s.second[i])));
    stat = std::max(stat, std::abs(fn(s.first[i], y_max) - cdf(s.first[i], y_max)));
    stat = std::max(stat, std::abs(fn(x_max, s.second[i]) - cdf(x_max, s.second[i])));
  }
  return stat;
}

double eigen_second_singular_value(const BinnedOperator& op) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(op.m, op.m);
  for (std::size_t i = 0; i < op.m; ++i)
    for (std::size_t j = 0; j < op.m; ++j)
      if (op.row_marginal[i] > 0 && op.col_marginal[j] > 0)
        a(i, j) = op.mass(i, j) / std::sqrt(op.row_marginal[i] * op.col_marginal[j]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(1);
}

BinnedOperator random_operator(std::size_t m, CaseDraws& draws) {
  std::vector<double> mass(m * m);
  for (double& p : mass) {
    const double u = draws.uniform(0.0, 1.0);
    p = u * u * u;
  }
  return BinnedOperator::from_mass(m, std::move(mass));
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("philox4x32-10 known-answer vectors") {
    const auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    const auto ones = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                 {0xffffffff, 0xffffffff});
    CHECK(ones == std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    const auto pi = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                               {0xa4093822, 0x299f31d0});
    CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("identical seed and stream reproduce the draw sequence") {
    const RngStream s{42, 7};
    auto a = s.slot(3);
    auto b = s.slot(3);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
  }

  TEST_CASE("distinct streams and split tags give different sequences") {
    auto a = RngStream{42, 0}.slot(0);
    auto b = RngStream{42, 1}.slot(0);
    auto c = RngStream{42, 0}.split(1).slot(0);
    auto d = RngStream{42, 0}.split(2).slot(0);
    const auto va = a(), vb = b(), vc = c(), vd = d();
    CHECK(va != vb);
    CHECK(vc != vd);
    CHECK(va != vc);
  }

  TEST_CASE("uniforms lie in the open unit interval with mean 1/2") {
    auto e = RngStream{1, 0}.slot(0);
    std::vector<double> u(200000);
    for (double& v : u) {
      v = e.uniform();
      REQUIRE(v > 0.0);
      REQUIRE(v < 1.0);
    }
    const auto m = mean_with_se(u);
    CHECK(mocorr::testing::within_se(m.value, 0.5, m.se));
  }

  TEST_CASE("streams are uncorrelated") {
    const std::size_t n = 100000;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = RngStream{5, 0}.slot(i).uniform();
      b[i] = RngStream{5, 1}.slot(i).uniform();
    }
    const auto r = correlation_with_se(a, b);
    CHECK(std::abs(r.value) <= 4.0 * r.se);
  }

  TEST_CASE("sampling is independent of the worker count") {
    set_thread_count(1);
    const auto one = sample_copula(CopulaParams(0.3, 0.6), 100000, RngStream{9, 2});
    set_thread_count(4);
    const auto four = sample_copula(CopulaParams(0.3, 0.6), 100000, RngStream{9, 2});
    set_thread_count(0);
    CHECK(one.first == four.first);
    CHECK(one.second == four.second);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("gauss-legendre weights and symmetry") {
    for (int n : {2, 5, 16, 32, 64}) {
      const auto r = gauss_legendre(n);
      CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) ==
            doctest::Approx(2.0).epsilon(1e-14));
      for (int i = 0; i < n; ++i) CHECK(r.nodes[i] == doctest::Approx(-r.nodes[n - 1 - i]));
      CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    }
  }

  TEST_CASE("constant integrand integrates to one") {
    const double v = quad_2d([](double, double) { return 1.0; }, QuadratureSpec{});
    CHECK(std::abs(v - 1.0) <= 1e-14);
  }

  TEST_CASE("u*v integrates to 1/4") {
    CHECK(std::abs(quad_2d([](double u, double v) { return u * v; }, QuadratureSpec{}) - 0.25) <=
          1e-12);
  }

  TEST_CASE("polynomials up to degree 2n-1 per axis are exact") {
    CaseDraws draws(11);
    for (int n : {2, 3, 4, 8}) {
      const QuadratureSpec spec{QuadratureRule::tensor_gauss_legendre, n, 1};
      const int deg = 2 * n - 1;
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> a(deg + 1), b(deg + 1);
        for (auto& c : a) c = draws.uniform(-1, 1);
        for (auto& c : b) c = draws.uniform(-1, 1);
        auto poly = [](const std::vector<double>& c, double x) {
          double s = 0.0;
          for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
          return s;
        };
        auto integral = [](const std::vector<double>& c) {
          double s = 0.0;
          for (std::size_t i = 0; i < c.size(); ++i) s += c[i] / static_cast<double>(i + 1);
          return s;
        };
        const double got = quad_2d([&](double u, double v) { return poly(a, u) * poly(b, v); }, spec);
        CHECK(std::abs(got - integral(a) * integral(b)) <= 1e-12);
      }
    }
  }

  TEST_CASE("kinked covariance integrand") {
    // phi = psi = 0.5, k = l = 0: phi psi / {(k+2)(l+2)((k+2)psi + (l+2)phi - phi psi)}
    const double expected = 0.25 / (4.0 * 1.75);
    auto f = [](double u, double v) {
      return std::min(std::sqrt(u) * v, u * std::sqrt(v)) - u * v;
    };
    // kink along v = u
    const double split = quad_2d_split(f, [](double u) { return u; }, QuadratureSpec{});
    CHECK(std::abs(split - expected) <= 1e-8);
    // plain tensor rule straddles the kink; the default panels still give 1e-6
    CHECK(std::abs(quad_2d(f, QuadratureSpec{}) - expected) <= 1e-6);
  }

  TEST_CASE("non-finite integrand names the node") {
    try {
      quad_2d([](double u, double) { return u > 0.5 ? std::nan("") : 1.0; }, QuadratureSpec{});
      FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
      CHECK(e.x() > 0.5);
      CHECK(std::string(e.what()).find("node") != std::string::npos);
    }
  }

  TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(quad_1d([](double) { return 1.0; }, {QuadratureRule::gauss_legendre, 1, 1}),
                    ValidationError);
    CHECK_THROWS_AS(quad_1d([](double) { return 1.0; }, {QuadratureRule::gauss_legendre, 4, 0}),
                    ValidationError);
    CHECK(QuadratureSpec{QuadratureRule::tensor_gauss_legendre, 32, 8}.evaluation_count() ==
          256u * 256u);
    CHECK(QuadratureSpec{QuadratureRule::gauss_legendre, 32, 8}.evaluation_count() == 256u);
  }
}

TEST_SUITE("ecdf") {
  TEST_CASE("single point against independence") {
    const auto s = from_points({0.5}, {0.5});
    CHECK(ecdf_ks(s, [](double u, double v) { return u * v; }) == doctest::Approx(0.75));
  }

  TEST_CASE("empty sample is an error") {
    CHECK_THROWS_AS(ecdf_ks(from_points({}, {}), [](double, double) { return 0.0; }),
                    ValidationError);
  }

  TEST_CASE("matches the quadratic-time reference, including ties") {
    CaseDraws draws(3);
    std::vector<double> a(400), b(400);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = std::round(draws.uniform(0, 1) * 40) / 40;  // heavy ties
      b[i] = i % 7 == 0 ? a[i] : std::round(draws.uniform(0, 1) * 40) / 40;
    }
    const auto s = from_points(a, b);
    auto cdf = [](double u, double v) { return std::min(u, v) * 0.5 + u * v * 0.5; };
    CHECK(ecdf_ks(s, cdf) == doctest::Approx(brute_force_ks(s, cdf)).epsilon(1e-15));
  }

  TEST_CASE("cdfs agreeing on the sample grid give identical statistics") {
    const auto s = uniform_pairs(2000, 4);
    auto exact = [](double u, double v) { return u * v; };
    auto same = [](double u, double v) { return std::exp(std::log(u) + std::log(v)); };
    CHECK(ecdf_ks(s, exact) == doctest::Approx(ecdf_ks(s, same)).epsilon(1e-14));
  }

  TEST_CASE("own-cdf statistic at n = 1e5 stays below 0.01") {
    // Calibrate sqrt(n) D on small samples: its 99% point must sit below
    // 0.01 * sqrt(1e5) = 3.162 for the n = 1e5 threshold to hold with 99%.
    std::vector<double> scaled;
    for (std::uint64_t rep = 0; rep < 200; ++rep) {
      const auto s = uniform_pairs(2000, 1000 + rep);
      scaled.push_back(std::sqrt(2000.0) * ecdf_ks(s, [](double u, double v) { return u * v; }));
    }
    std::sort(scaled.begin(), scaled.end());
    CHECK(scaled[197] < 0.01 * std::sqrt(1e5));
    for (std::uint64_t rep = 0; rep < 3; ++rep)
      CHECK(ecdf_ks(uniform_pairs(100000, rep), [](double u, double v) { return u * v; }) < 0.01);
  }
}

TEST_SUITE("binning") {
  TEST_CASE("all points in cell (0,0)") {
    const auto s = from_points({0.01, 0.02, 0.0}, {0.0, 0.03, 0.04});
    const auto op = bin_pairs(s, 8);
    CHECK(op.mass(0, 0) == 1.0);
    CHECK(std::accumulate(op.joint_mass.begin(), op.joint_mass.end(), 0.0) == 1.0);
  }

  TEST_CASE("comonotone sample has no off-diagonal mass") {
    const auto s = sample_copula(CopulaParams(1.0, 1.0), 1000, RngStream{1, 0});
    const auto op = bin_pairs(s, 2);
    CHECK(op.mass(0, 1) == 0.0);
    CHECK(op.mass(1, 0) == 0.0);
    op.validate();
  }

  TEST_CASE("independent uniforms fill cells evenly") {
    const auto op = bin_pairs(uniform_pairs(1000000, 8), 10);
    for (double p : op.joint_mass) CHECK(std::abs(p - 0.01) < 0.01);
    // binomial concentration: sd = sqrt(0.01 * 0.99 / 1e6) ~ 1e-4
    for (double p : op.joint_mass) CHECK(std::abs(p - 0.01) < 6e-4);
  }

  TEST_CASE("coordinates outside the unit square are rejected") {
    CHECK_THROWS_AS(bin_pairs(from_points({1.5}, {0.2}), 4), ValidationError);
    CHECK_THROWS_AS(bin_pairs(from_points({0.5}, {-0.1}), 4), ValidationError);
    CHECK_THROWS_AS(bin_pairs(from_points({0.5}, {0.5}), 1), ValidationError);
  }

  TEST_CASE("validate catches inconsistent marginals") {
    auto op = BinnedOperator::from_mass(2, {0.25, 0.25, 0.25, 0.25});
    op.validate();
    op.row_marginal[0] = 0.6;
    CHECK_THROWS_AS(op.validate(), ValidationError);
  }
}

TEST_SUITE("spectral") {
  TEST_CASE("independence operator has second singular value 0") {
    std::vector<double> r{0.1, 0.2, 0.3, 0.4}, c{0.25, 0.25, 0.4, 0.1};
    std::vector<double> mass;
    for (double a : r)
      for (double b : c) mass.push_back(a * b);
    const auto res = second_singular_value(BinnedOperator::from_mass(4, mass));
    CHECK(res.value <= 1e-8);
  }

  TEST_CASE("comonotone 2x2 operator has second singular value 1") {
    const auto res = second_singular_value(BinnedOperator::from_mass(2, {0.5, 0, 0, 0.5}));
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("agrees with a dense SVD on random operators") {
    CaseDraws draws(21);
    for (std::size_t m : {3u, 5u, 12u, 30u}) {
      const auto op = random_operator(m, draws);
      const auto res = second_singular_value(op);
      CHECK(res.value == doctest::Approx(eigen_second_singular_value(op)).epsilon(1e-8));
      CHECK(res.residual <= kDefaultSpectralTol);
    }
  }

  TEST_CASE("zero rows and columns are excluded") {
    std::vector<double> mass(16, 0.0);
    mass[0 * 4 + 0] = 0.3;
    mass[0 * 4 + 2] = 0.1;
    mass[2 * 4 + 0] = 0.1;
    mass[2 * 4 + 2] = 0.5;
    const auto op = BinnedOperator::from_mass(4, mass);
    CHECK(second_singular_value(op).value ==
          doctest::Approx(eigen_second_singular_value(op)).epsilon(1e-8));
  }

  TEST_CASE("invariant under consistent row and column permutations") {
    CaseDraws draws(5);
    const std::size_t m = 9;
    const auto op = random_operator(m, draws);
    std::vector<std::size_t> pr(m), pc(m);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::mt19937 shuffle(3);
    for (int trial = 0; trial < 5; ++trial) {
      std::shuffle(pr.begin(), pr.end(), shuffle);
      std::shuffle(pc.begin(), pc.end(), shuffle);
      std::vector<double> mass(m * m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mass[i * m + j] = op.mass(pr[i], pc[j]);
      CHECK(second_singular_value(BinnedOperator::from_mass(m, mass)).value ==
            doctest::Approx(second_singular_value(op).value).epsilon(1e-8));
    }
  }

  TEST_CASE("value always lies in [0,1]") {
    CaseDraws draws(8);
    for (int trial = 0; trial < 20; ++trial) {
      const auto op = random_operator(2 + trial % 7, draws);
      const double v = second_singular_value(op).value;
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }

  TEST_CASE("non-convergence carries the last iterate") {
    CaseDraws draws(2);
    const auto op = random_operator(10, draws);
    try {
      second_singular_value(op, 1e-14, 2);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(e.residual() > 1e-14);
      CHECK(e.iterate().size() == 10);
      CHECK(e.value() >= 0.0);
    }
    CHECK_THROWS_AS(second_singular_value(op, 0.0, 10), ValidationError);
  }
}

TEST_SUITE("stats") {
  TEST_CASE("moments of a small sample") {
    const std::vector<double> x{1, 2, 3, 4};
    CHECK(mean(x) == 2.5);
    CHECK(variance(x) == doctest::Approx(5.0 / 3.0));
    CHECK_THROWS_AS(variance(std::vector<double>{1.0}), ValidationError);
  }

  TEST_CASE("correlation standard error under independence is about 1/sqrt(n)") {
    const auto s = uniform_pairs(40000, 12);
    const auto r = correlation_with_se(s.first, s.second);
    CHECK(r.se == doctest::Approx(1.0 / std::sqrt(40000.0)).epsilon(0.1));
  }

  TEST_CASE("constant samples have no correlation") {
    const std::vector<double> a{1, 1, 1}, b{1, 2, 3};
    CHECK_THROWS_AS(correlation_with_se(a, b), NumericalError);
  }
}
