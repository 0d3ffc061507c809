#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "gslab/error.hpp"
#include "gslab/kernels.hpp"
#include "gslab/testfunctions.hpp"

using namespace gslab;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("resolvent batch matches its serial twin bit for bit") {
  std::mt19937_64 rng(1);
  std::vector<ResolventQuery> q;
  for (int i = 0; i < 300; ++i) {
    q.push_back({static_cast<std::uint64_t>(uniform01(rng) * 50000), uniform01(rng), 0.01 + 10 * uniform01(rng)});
  }
  const auto a = resolvent_batch(q);
  const auto b = resolvent_batch_serial(q);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_bits(a[i], b[i]));
}

TEST_CASE("poisson batch matches its serial twin bit for bit") {
  std::vector<LimitQuery> q;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) q.push_back({0.3 * i, 0.1 + 0.5 * j});
  }
  const auto a = poisson_batch(q);
  const auto b = poisson_batch_serial(q);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(same_bits(a[i].series_value, b[i].series_value));
    CHECK(same_bits(a[i].integral_value, b[i].integral_value));
  }
}

TEST_CASE("overlap and number sweeps match their serial twins bit for bit") {
  const auto g = GroundStateModel::gaussian(1, 1.0, {0.2});
  const auto f = normalized_indicator(RegionSpec::interval(-1, 2), 601);
  const std::vector<double> lambdas = {2.0, 1.0, 0.1, 1e-3, 1e-6};
  const auto a = overlap_sweep(g, f, lambdas);
  const auto b = overlap_sweep_serial(g, f, lambdas);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(same_bits(a[i].value.real(), b[i].value.real()));
    CHECK(same_bits(a[i].abs_error, b[i].abs_error));
  }
  const std::vector<double> ns = {1, 10, 100, 1000, 1e4};
  const auto c = number_sweep(g, RegionSpec::interval(-1, 1), ns, lambdas, 0);
  const auto d = number_sweep_serial(g, RegionSpec::interval(-1, 1), ns, lambdas, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(same_bits(c[i].regular, d[i].regular));
    CHECK(same_bits(c[i].condensate, d[i].condensate));
  }
  const std::vector<double> short_lambdas = {1.0};
  CHECK_THROWS_AS(number_sweep(g, RegionSpec::interval(-1, 1), ns, short_lambdas, 0), ValidationError);
}

TEST_CASE("a failing row surfaces as the library error") {
  std::vector<ResolventQuery> q = {{10, 0.5, 1.0}, {10, 2.0, 1.0}, {10, 0.5, -1.0}};
  CHECK_THROWS_AS(resolvent_batch(q), ValidationError);
  CHECK_THROWS_AS(resolvent_batch_serial(q), ValidationError);
  try {
    resolvent_batch(q);
  } catch (const ValidationError& parallel) {
    try {
      resolvent_batch_serial(q);
    } catch (const ValidationError& serial) {
      CHECK(std::string(parallel.what()) == std::string(serial.what()));
    }
  }
}
