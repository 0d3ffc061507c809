#include <doctest.h>
#include <quadmath.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gslab/error.hpp"
#include "gslab/exactform.hpp"
#include "gslab/numeric.hpp"
#include "gslab/testfunctions.hpp"

using namespace gslab;

namespace {

// Direct binomial sum in quad precision with log-gamma weights.
double quad_resolvent(std::uint64_t n, double p, double mu) {
  if (p == 0.0) return 1.0 / mu;
  if (p == 1.0) return 1.0 / (mu + static_cast<double>(n));
  const __float128 lp = logq(static_cast<__float128>(p));
  const __float128 lq = log1pq(-static_cast<__float128>(p));
  const __float128 ln = lgammaq(static_cast<__float128>(n) + 1);
  __float128 sum = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const __float128 kk = static_cast<__float128>(k);
    const __float128 lw = ln - lgammaq(kk + 1) - lgammaq(static_cast<__float128>(n - k) + 1) + kk * lp +
                          static_cast<__float128>(n - k) * lq;
    sum += expq(lw) / (static_cast<__float128>(mu) + kk);
  }
  return static_cast<double>(sum);
}

double quad_poisson(double nu, double mu) {
  __float128 term = expq(-static_cast<__float128>(nu));
  __float128 sum = 0;
  for (int k = 0; k < 2000; ++k) {
    sum += term / (static_cast<__float128>(mu) + k);
    term *= static_cast<__float128>(nu) / (k + 1);
    if (k > nu && term < 1e-40Q) break;
  }
  return static_cast<double>(sum);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const double kA0sq = 1.0 / std::sqrt(std::numbers::pi);

}  // namespace

TEST_CASE("small resolvent values by hand") {
  CHECK(resolvent_expectation({2, 0.5, 1.0}) == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
  CHECK(resolvent_expectation({1, 0.5, 1.0}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(resolvent_expectation({0, 0.3, 2.0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(resolvent_expectation({50, 0.0, 4.0}) == 0.25);
  CHECK(resolvent_expectation({50, 1.0, 4.0}) == doctest::Approx(1.0 / 54.0).epsilon(1e-15));
}

TEST_CASE("resolvent sums agree with a quad-precision oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t n = trial < 40 ? 1 + static_cast<std::uint64_t>(uniform01(rng) * 2000)
                                       : 1 + static_cast<std::uint64_t>(uniform01(rng) * 100000);
    const double p = uniform01(rng);
    const double mu = std::pow(10.0, -2.0 + 4.0 * uniform01(rng));
    const double got = resolvent_expectation({n, p, mu});
    CHECK(rel(got, quad_resolvent(n, p, mu)) < 1e-13);
  }
  for (double p : {1e-12, 1e-6, 0.999999}) {
    CHECK(rel(resolvent_expectation({5000, p, 0.7}), quad_resolvent(5000, p, 0.7)) < 1e-13);
  }
}

TEST_CASE("resolvent input validation") {
  CHECK_THROWS_AS(resolvent_expectation({10, 1.5, 1.0}), ValidationError);
  CHECK_THROWS_AS(resolvent_expectation({10, 0.5, 0.0}), ValidationError);
  CHECK_THROWS_AS(resolvent_expectation({kMaxParticles + 1, 0.5, 1.0}), ValidationError);
  CHECK_THROWS_AS(resolvent_bounds({10, 0.0, 1.0}), ValidationError);
}

TEST_CASE("binomial expectation of K and of 1") {
  for (std::uint64_t n : {1u, 17u, 1000u, 1000000u}) {
    for (double p : {0.01, 0.4, 0.97}) {
      CHECK(binomial_expectation(n, p, [](std::uint64_t) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(binomial_expectation(n, p, [](std::uint64_t k) { return static_cast<double>(k); }) ==
            doctest::Approx(static_cast<double>(n) * p).epsilon(1e-13));
    }
  }
}

TEST_CASE("property: both resolvent bounds hold on random queries") {
  std::mt19937_64 rng(3);
  int violations = 0;
  for (int i = 0; i < 2000; ++i) {
    const ResolventQuery q{1 + static_cast<std::uint64_t>(uniform01(rng) * 20000), 1e-6 + uniform01(rng) * (1 - 1e-6),
                           std::pow(10.0, -2.0 + 4.0 * uniform01(rng))};
    const double w = resolvent_expectation(q);
    const auto b = resolvent_bounds(q);
    if (std::abs(w - 1.0 / q.mu) > b.regular_bound * (1 + 1e-12)) ++violations;
    if (w > b.singular_bound * (1 + 1e-12)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("property: resolvent expectation is nonincreasing in n") {
  std::mt19937_64 rng(5);
  for (int chain = 0; chain < 50; ++chain) {
    const double p = uniform01(rng);
    const double mu = std::pow(10.0, -2.0 + 4.0 * uniform01(rng));
    double previous = resolvent_expectation({0, p, mu});
    for (std::uint64_t n = 1; n < 200; ++n) {
      const double w = resolvent_expectation({n, p, mu});
      CHECK(w <= previous * (1 + 1e-14));
      previous = w;
    }
  }
}

TEST_CASE("limit forms: spot value, oracle and closed form at mu = 1") {
  const auto v = poisson_limit({1.0, 1.0});
  CHECK(v.series_value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(v.integral_value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  for (double nu : {0.0, 1e-3, 0.5, 3.0, 40.0, 200.0}) {
    for (double mu : {0.01, 0.5, 1.0, 7.0, 100.0}) {
      const auto l = poisson_limit({nu, mu});
      CHECK(rel(l.series_value, quad_poisson(nu, mu)) < 1e-13);
      CHECK(std::abs(l.series_value - l.integral_value) < 1e-9 * l.series_value);
    }
    if (nu > 0) CHECK(poisson_limit({nu, 1.0}).series_value == doctest::Approx(-std::expm1(-nu) / nu).epsilon(1e-13));
  }
  CHECK(limit_mean_occupation(37.5) == doctest::Approx(37.5).epsilon(1e-13));
}

TEST_CASE("nu_f for the symmetric indicator") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto f = normalized_indicator(RegionSpec::interval(-1, 1), 2001);
  // sigma^s g1(0)^2 |int f|^2 = pi^(-1/2) * 2.
  CHECK(nu_f(g, f, 1.0) == doctest::Approx(2.0 * kA0sq).epsilon(1e-13));
  CHECK(nu_f(g, f, 3.0) == doctest::Approx(6.0 * kA0sq).epsilon(1e-13));
}

TEST_CASE("finite-n expectation approaches its limit") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto f = normalized_indicator(RegionSpec::interval(-1, 1), 2001);
  const auto rows = finite_n_limit_convergence(g, f, ScalingFamily(1.0, 1.0), 1.0, {100, 1000, 10000, 100000});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].gap < rows[i - 1].gap);
  CHECK(rows.back().gap < 1e-5);
  CHECK(rows.front().limit == doctest::Approx(poisson_limit({2.0 * kA0sq, 1.0}).series_value).epsilon(1e-14));
  CHECK_THROWS_AS(finite_n_limit_convergence(g, f, ScalingFamily(1.0, 2.0), 1.0, {100}), ValidationError);
}

TEST_CASE("number expectations against erf") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const double n = 100.0;
  for (double lambda : {1.0, 0.3, 0.05}) {
    for (auto [a, b] : {std::pair{-1.0, 1.0}, std::pair{0.0, 1.0}}) {
      const auto e = number_expectations(g, n, lambda, RegionSpec::interval(a, b));
      const double total = n / 2.0 * (std::erf(lambda * b) - std::erf(lambda * a));
      const double r = std::sqrt(0.5);
      const double integral = std::pow(std::numbers::pi, -0.25) * std::sqrt(std::numbers::pi / 2.0) /
                              std::sqrt(lambda) * (std::erf(lambda * b * r) - std::erf(lambda * a * r));
      const double condensate = n * integral * integral / (b - a);
      CHECK(e.total == doctest::Approx(total).epsilon(1e-10));
      CHECK(e.condensate == doctest::Approx(condensate).epsilon(1e-10));
      CHECK(e.regular == doctest::Approx(total - condensate).epsilon(1e-6));
    }
  }
}

TEST_CASE("regular count stays accurate where total - condensate cancels") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const double lambda = 1e-4;
  const auto e = number_expectations(g, 1.0, lambda, RegionSpec::interval(-1, 1));
  // n lambda^5 * 2 / (45 sqrt(pi)) to leading order.
  CHECK(e.regular == doctest::Approx(std::pow(lambda, 5) * 2.0 / (45.0 * std::sqrt(std::numbers::pi))).epsilon(1e-6));
}

TEST_CASE("critical exponent of the harmonic trap on (-1, 1)") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto c = critical_exponent(g, RegionSpec::interval(-1, 1), {1e-3, 3e-3, 1e-2, 3e-2, 1e-1});
  CHECK(c.l == 4);
  CHECK(c.c_O == doctest::Approx(2.0 / (45.0 * std::sqrt(std::numbers::pi))).epsilon(1e-2));
  CHECK(c.snap_residual < 0.02);
  CHECK_THROWS_AS(critical_exponent(g, RegionSpec::interval(-1, 1), {1e-2, 2e-2, 3e-2, 4e-2}), ValidationError);
}

TEST_CASE("critical exponent of a tilted trap on (0, 1) is 2") {
  const auto g = solve_ground_state(
      TrapPotential::sampled_from([](double x) { return x * x + 0.2 * x * x * x; }, 4.0, 2048), 2048);
  std::vector<double> lambdas;
  for (double x = 1e-5; x <= 1.0001e-3; x *= std::sqrt(10.0)) lambdas.push_back(x);
  const auto c = critical_exponent(g, RegionSpec::interval(0, 1), lambdas);
  CHECK(c.l == 2);
  CHECK(c.snap_residual < 0.02);
  const double d1 = taylor_polynomial(g, 2).coefficients_1d()[1];
  // (g1'(0))^2 times the variance of x on (0, 1).
  CHECK(c.c_O == doctest::Approx(d1 * d1 / 12.0).epsilon(1e-2));
}

TEST_CASE("onset report finds the first n above the regular saturation") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto region = RegionSpec::interval(-1, 1);
  const auto c = critical_exponent(g, region, logspace(1e-3, 1e-1, 5));
  const auto rep = onset_report(g, region, ScalingFamily(1.0, 1.0), {1, 10, 100}, c);
  REQUIRE(rep.n_c.has_value());
  CHECK(rep.m_R == doctest::Approx(c.c_O).epsilon(1e-15));
  for (const auto& r : rep.rows) {
    if (r.n < *rep.n_c) CHECK(r.condensate < rep.m_R);
  }
  CHECK_THROWS_AS(onset_report(g, region, ScalingFamily(1.0, 1.0), {10, 10}, c), ValidationError);
}

TEST_CASE("split states") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto region = RegionSpec::interval(-1, 1);
  CHECK(split_state_expectation(g, 100, 30, 0.1, region, SplitObservable::CondensateNumber) == 30.0);
  CHECK(split_state_expectation(g, 100, 100, 0.1, region, SplitObservable::RegularNumber) == 0.0);
  const double r10 = split_state_expectation(g, 100, 90, 0.1, region, SplitObservable::RegularNumber);
  const double r20 = split_state_expectation(g, 100, 80, 0.1, region, SplitObservable::RegularNumber);
  CHECK(r20 == doctest::Approx(2.0 * r10).epsilon(1e-14));
  CHECK_THROWS_AS(split_state_expectation(g, 10, 11, 0.1, region, SplitObservable::RegularNumber), ValidationError);
}
