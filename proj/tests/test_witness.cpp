#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gslab/error.hpp"
#include "gslab/witness.hpp"

using namespace gslab;

TEST_CASE("chi of large powers of two") {
  const BigInt n = BigInt(1) << 1728;
  CHECK(evaluate_chi(ChiFunction::Log, n) == doctest::Approx(1728.0 * std::numbers::ln2).epsilon(1e-15));
  CHECK(evaluate_chi(ChiFunction::LogLog, n) == doctest::Approx(std::log(1728.0 * std::numbers::ln2)).epsilon(1e-15));
  CHECK(evaluate_chi(ChiFunction::Log, BigInt(12345)) == doctest::Approx(std::log(12345.0)).epsilon(1e-15));
  CHECK(evaluate_chi(ChiFunction::Identity, BigInt(12345)) == 12345.0);
  CHECK_THROWS_AS(evaluate_chi(ChiFunction::Log, BigInt(0)), ValidationError);
  CHECK(parse_chi("lnln") == ChiFunction::LogLog);
  CHECK_THROWS_AS(parse_chi("sqrt"), ValidationError);
}

TEST_CASE("power-of-cube schedule with chi = ln") {
  WitnessSpec spec;
  const auto r = almost_macroscopic_witness(spec);
  REQUIRE(r.rows.size() == 12);
  CHECK(r.strictly_increasing);
  double total = 0.0;
  for (const auto& row : r.rows) {
    const double k = row.k;
    CHECK(row.n_k == (BigInt(1) << (row.k * row.k * row.k)));
    CHECK(row.weight == doctest::Approx(6.0 / (std::numbers::pi * std::numbers::pi) / (k * k)));
    // delta |c_k|^2 ln 2^(k^3) = delta (6 / pi^2) ln 2 * k.
    CHECK(row.lower_bound == doctest::Approx(0.5 * 6.0 / (std::numbers::pi * std::numbers::pi) * std::numbers::ln2 * k));
    CHECK_FALSE(row.meets_cube_target);
    total += row.weight;
  }
  CHECK(total < 1.0);
}

TEST_CASE("auto schedule reaches the cube target") {
  WitnessSpec spec;
  spec.schedule = ScheduleKind::Auto;
  const auto r = almost_macroscopic_witness(spec);
  CHECK(r.strictly_increasing);
  for (const auto& row : r.rows) {
    CHECK(row.meets_cube_target);
    // Minimal: half of n_k falls short.
    CHECK(evaluate_chi(ChiFunction::Log, row.n_k / 2) < std::pow(row.k, 3));
  }
  spec.chi = ChiFunction::LogLog;
  spec.k_max = 3;
  CHECK_THROWS_AS(almost_macroscopic_witness(spec), ValidationError);
}

TEST_CASE("explicit schedules are validated") {
  WitnessSpec spec;
  spec.schedule = ScheduleKind::Explicit;
  spec.k_max = 3;
  spec.explicit_schedule = {BigInt(10), BigInt(1000), BigInt(1000000)};
  const auto r = almost_macroscopic_witness(spec);
  CHECK(r.rows[2].chi == doctest::Approx(std::log(1e6)));
  spec.explicit_schedule = {BigInt(10), BigInt(10), BigInt(100)};
  CHECK_THROWS_AS(almost_macroscopic_witness(spec), ValidationError);
  spec.explicit_schedule = {BigInt(10)};
  CHECK_THROWS_AS(almost_macroscopic_witness(spec), ValidationError);
}

TEST_CASE("finite support stops the divergence") {
  WitnessSpec spec;
  spec.support = 4;
  const auto r = almost_macroscopic_witness(spec);
  CHECK_FALSE(r.strictly_increasing);
  double total = 0.0;
  for (double c : r.coefficients) total += c;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& row : r.rows) {
    if (row.k > 4) CHECK(row.lower_bound == 0.0);
  }
}

TEST_CASE("witness input validation") {
  WitnessSpec spec;
  spec.delta = 0.0;
  CHECK_THROWS_AS(almost_macroscopic_witness(spec), ValidationError);
  spec.delta = 0.5;
  spec.k_max = 200;
  CHECK_THROWS_AS(almost_macroscopic_witness(spec), ValidationError);
}
