#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gslab/classify.hpp"
#include "gslab/error.hpp"
#include "gslab/exactform.hpp"
#include "gslab/numeric.hpp"
#include "gslab/testfunctions.hpp"

using namespace gslab;

namespace {

const auto kGrid = logspace(1e2, 1e8, 13);

ClassificationReport run(const GroundStateModel& g, const SampledWaveFunction& f, double kappa) {
  return classify_function(g, f, ScalingFamily(1.0, kappa), kGrid);
}

}  // namespace

TEST_CASE("kappa below s: compactly supported functions are regular") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto r = run(g, normalized_indicator(RegionSpec::interval(0, 1), 2001), 0.5);
  CHECK(r.verdict == Verdict::Regular);
  CHECK(r.fitted_exponent == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::isnan(r.nu_f));
}

TEST_CASE("kappa above s with nonzero integral: singular overlap with exponent 1 - s/kappa") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto r = run(g, normalized_indicator(RegionSpec::interval(0, 1), 2001), 3.0);
  CHECK(r.verdict == Verdict::SingularOverlap);
  CHECK(std::abs(r.fitted_exponent - 2.0 / 3.0) < 0.05);
  CHECK(r.leading_order == 0);
}

TEST_CASE("first moment only, tilted ground state: threshold at kappa = 3") {
  const auto g = GroundStateModel::gaussian(1, 1.0, {0.5});
  const auto f = exact_moment_function(1.0, 1, 2001);
  const auto at4 = run(g, f, 4.0);
  CHECK(at4.verdict == Verdict::SingularOverlap);
  CHECK(std::abs(at4.fitted_exponent - 0.25) < 0.05);
  CHECK(at4.leading_order == 1);
  CHECK(run(g, f, 2.5).verdict == Verdict::Regular);
  const auto at3 = run(g, f, 3.0);
  CHECK(at3.verdict == Verdict::Withheld);
  CHECK_FALSE(at3.diagnostics.empty());
}

TEST_CASE("property: exponent law over orders and kappas") {
  const auto g = GroundStateModel::gaussian(1, 1.0, {0.5});
  for (int j = 0; j < 3; ++j) {
    const auto f = exact_moment_function(1.0, j, 2001);
    for (double kappa : {0.5, 2.0, 3.0, 5.0}) {
      const double expected = 1.0 - (1.0 + 2.0 * j) / kappa;
      const auto r = run(g, f, kappa);
      CHECK(r.leading_order == j);
      CHECK(r.predicted_exponent == doctest::Approx(expected));
      if (std::abs(expected) < 1e-12) continue;
      CHECK(std::abs(r.fitted_exponent - expected) < 0.05);
      CHECK(r.verdict == (expected > 0 ? Verdict::SingularOverlap : Verdict::Regular));
    }
  }
}

TEST_CASE("property: verdict is invariant under scalar multiples") {
  const auto g = GroundStateModel::gaussian(1, 1.0, {0.3});
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_smooth_bump(RegionSpec::interval(-1, 2), rng, 1001);
    for (double kappa : {0.5, 3.0}) {
      const auto base = run(g, f, kappa);
      for (Complex c : {Complex(2.0, -3.0), Complex(1e-5, 0.0), Complex(0.0, 40.0)}) {
        const auto r = run(g, f.scaled(c), kappa);
        CHECK(r.verdict == base.verdict);
        CHECK(r.fitted_exponent == doctest::Approx(base.fitted_exponent).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("property: generic functions are never withheld away from kappa = s") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 6; ++t) {
    const auto f = random_smooth_bump(RegionSpec::interval(-1, 1), rng, 1001);
    for (double kappa : {0.5, 2.0, 5.0}) CHECK(run(g, f, kappa).verdict != Verdict::Withheld);
  }
}

TEST_CASE("kappa = s: coexistence at the closed-form nu_f") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto f = normalized_indicator(RegionSpec::interval(-1, 1), 2001);
  const auto r = run(g, f, 1.0);
  CHECK(r.verdict == Verdict::Coexistence);
  CHECK(r.nu_f == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(std::abs(r.rows.back().np - r.nu_f) < 1e-6);

  // Zero integral at kappa = s falls back to the exponent rule.
  CHECK(run(g, exact_moment_function(1.0, 2, 2001), 1.0).verdict == Verdict::Regular);
}

TEST_CASE("odd functions against a symmetric ground state have p_n = 0") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto r = run(g, exact_moment_function(1.0, 1, 2001), 4.0);
  CHECK(r.verdict == Verdict::Regular);
  CHECK(std::isinf(r.fitted_exponent));
  for (const auto& row : r.rows) CHECK(row.p == 0.0);
}

TEST_CASE("classification input validation") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto f = normalized_indicator(RegionSpec::interval(0, 1), 101);
  CHECK_THROWS_AS(classify_function(g, f, ScalingFamily(1, 2), logspace(1e2, 1e8, 8)), ValidationError);
  CHECK_THROWS_AS(classify_function(g, f, ScalingFamily(1, 2), logspace(1e2, 1e4, 12)), ValidationError);
  auto bad = kGrid;
  std::swap(bad[3], bad[4]);
  CHECK_THROWS_AS(classify_function(g, f, ScalingFamily(1, 2), bad), ValidationError);
}

TEST_CASE("consistency with the exact expectations") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const double mu = 1.0;

  // Regular at kappa = s: the gap to the limit 1/mu closes.
  const auto reg = exact_moment_function(1.0, 2, 2001);
  REQUIRE(run(g, reg, 1.0).verdict == Verdict::Regular);
  const auto rows = finite_n_limit_convergence(g, reg, ScalingFamily(1.0, 1.0), mu, {100, 10000, 1000000});
  CHECK(rows.front().limit == doctest::Approx(1.0 / mu).epsilon(1e-15));
  CHECK(rows.back().gap < rows.front().gap);
  CHECK(rows.back().gap < 1e-6);

  // Singular overlap: the exact expectation goes to zero.
  const auto sing = normalized_indicator(RegionSpec::interval(0, 1), 2001);
  const ScalingFamily family(1.0, 3.0);
  REQUIRE(classify_function(g, sing, family, kGrid).verdict == Verdict::SingularOverlap);
  double previous = 1.0 / mu;
  for (std::uint64_t n : {100u, 10000u, 1000000u}) {
    const double p = std::norm(scaled_overlap(g, sing, family.lambda(static_cast<double>(n))));
    const double w = resolvent_expectation({n, p, mu});
    CHECK(w < previous);
    previous = w;
  }
  CHECK(previous < 1e-2);
}

TEST_CASE("regular subspace: combinations stay regular") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const ScalingFamily family(1.0, 0.5);
  const auto odd = exact_moment_function(1.0, 1, 2001);
  const auto even = exact_moment_function(1.0, 2, 2001);
  const auto check = verify_regular_subspace(g, family, odd, even, kGrid, 1.0, 0, 5);
  CHECK(check.ok);
  REQUIRE(check.verdicts.size() == 5);
  CHECK(check.alphas[0] == Complex(0.0, 0.0));
  for (double s : check.tail_score) CHECK(std::abs(1.0 - s) < 1e-6);

  // Both odd: the sum is odd and p_n vanishes identically.
  const auto odd2 = monomial_function(RegionSpec::interval(-1, 1), {3}, 2001);
  CHECK(verify_regular_subspace(g, ScalingFamily(1.0, 4.0), odd, odd2, kGrid, 1.0, 1, 3).ok);

  // Two zero-integral functions below the threshold kappa < s + 2.
  const auto tilted = GroundStateModel::gaussian(1, 1.0, {0.5});
  CHECK(verify_regular_subspace(tilted, ScalingFamily(1.0, 2.5), even, even.scaled({0.0, 1.0}), kGrid, 2.0, 2, 3).ok);

  const auto ind = normalized_indicator(RegionSpec::interval(-1, 1), 2001);
  CHECK_THROWS_AS(verify_regular_subspace(g, ScalingFamily(1.0, 3.0), ind, odd, kGrid, 1.0, 0), ValidationError);
}

TEST_CASE("condensate space basis: degree rule and dropped odd term") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto region = RegionSpec::interval(0, 1);
  const auto b3 = condensate_space_basis(g, region, 3.0);
  CHECK(b3.k == 2);
  REQUIRE(b3.functions.size() == 1);
  CHECK(b3.degrees == std::vector<int>{0});
  CHECK(b3.diagnostics.size() == 1);
  for (auto v : b3.functions[0].values()) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-14));

  const auto b_eps = condensate_space_basis(g, region, 1.0 + 1e-9);
  CHECK(b_eps.k == 1);
  CHECK(b_eps.functions.size() == 1);
  CHECK_THROWS_AS(condensate_space_basis(g, region, 1.0), ValidationError);
}

TEST_CASE("condensate space basis for kappa = 6 against hand Gram-Schmidt") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto b = condensate_space_basis(g, RegionSpec::interval(0, 1), 6.0);
  CHECK(b.k == 3);
  REQUIRE(b.degrees == std::vector<int>{0, 2});
  // On (0, 1): 1 and (x^2 - 1/3) / sqrt(4/45), up to sign.
  const auto& grid = b.functions[1].grid();
  const auto v = b.functions[1].values();
  for (std::size_t i = 0; i < grid.size(); i += 97) {
    const double x = grid.coordinate(0, i);
    CHECK(std::abs(v[i]) == doctest::Approx(std::abs(x * x - 1.0 / 3.0) / std::sqrt(4.0 / 45.0)).epsilon(1e-9));
  }
}

TEST_CASE("property: basis is orthonormal") {
  const auto shifted = GroundStateModel::gaussian(1, 1.0, {0.4});
  for (double kappa : {2.0, 4.5, 9.0, 14.0}) {
    for (auto region : {RegionSpec::interval(0, 1), RegionSpec::interval(-2, 0.5)}) {
      const auto b = condensate_space_basis(shifted, region, kappa);
      const auto& w = b.functions.front().grid().weights();
      for (std::size_t i = 0; i < b.functions.size(); ++i) {
        for (std::size_t j = 0; j < b.functions.size(); ++j) {
          Complex s = 0.0;
          const auto u = b.functions[i].values();
          const auto v = b.functions[j].values();
          for (std::size_t t = 0; t < w.size(); ++t) s += w[t] * std::conj(u[t]) * v[t];
          CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
      }
    }
  }
  const auto g2 = GroundStateModel::gaussian(2, 1.0, {0.3, -0.2});
  const auto b2 = condensate_space_basis(g2, RegionSpec::cube(2, 0.0, 1.0), 5.0);
  CHECK(b2.k == 2);
  CHECK(b2.functions.size() == 2);
}

TEST_CASE("singular fraction of a basis element and of an orthogonal function") {
  const auto g = GroundStateModel::gaussian(1, 1.0);
  const auto b = condensate_space_basis(g, RegionSpec::interval(-1, 1), 3.0);
  CHECK(singular_fraction(b, b.functions[0]) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(singular_fraction(b, exact_moment_function(1.0, 1, 2001)) < 1e-15);
}
