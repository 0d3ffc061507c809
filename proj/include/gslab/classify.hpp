#pragma once

// Regular/singular classification of test functions under a scaling family,
// the subspace check for regular functions, and the polynomial basis of the
// local singular space.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gslab/groundstate.hpp"
#include "gslab/wavefunction.hpp"

namespace gslab {

enum class Verdict { Regular, SingularOverlap, Coexistence, Withheld };

std::string verdict_name(Verdict v);

inline constexpr double kExponentTolerance = 0.05;

struct ClassificationRow {
  double n = 0.0;
  double lambda = 0.0;
  /// |<g_lambda(n), f>|^2, set to 0 when the overlap is below its rounding estimate.
  double p = 0.0;
  double np = 0.0;
};

struct ClassificationReport {
  Verdict verdict = Verdict::Withheld;
  /// Slope of log(n p_n) against log n over the second half of the grid;
  /// -inf when every p_n is zero.
  double fitted_exponent = 0.0;
  double fit_rms = 0.0;
  /// sigma^s g1(0)^2 |int f|^2 when kappa = s, otherwise NaN.
  double nu_f = 0.0;
  double kappa = 0.0;
  int s = 0;
  /// Lowest order m with a nonzero pairing of degree-m Taylor terms and
  /// moments of f; -1 when none was found among the available orders.
  int leading_order = -1;
  /// 1 - (s + 2 m*) / kappa, NaN when leading_order < 0.
  double predicted_exponent = 0.0;
  std::vector<ClassificationRow> rows;
  std::vector<std::string> diagnostics;
};

/// Requires at least 12 increasing n values spanning at least three decades.
ClassificationReport classify_function(const GroundStateModel& g, const SampledWaveFunction& f,
                                       const ScalingFamily& family,
                                       const std::vector<double>& n_grid);

struct SubspaceCheck {
  bool ok = false;
  std::vector<Complex> alphas;
  std::vector<Complex> betas;
  std::vector<Verdict> verdicts;
  /// mu * omega_n(R_{f1+f2}(mu)) at the tail n values (n <= kMaxParticles).
  std::vector<double> tail_n;
  std::vector<double> tail_score;
  std::vector<std::string> diagnostics;
};

/// Classifies alpha f1 + beta f2 for `trials` seeded complex pairs (the first
/// pair is alpha = beta = 0) and checks that mu omega_n(R_{f1+f2}(mu)) moves
/// toward 1 along the tail of the grid. f1 and f2 must share a grid and both
/// classify as Regular, otherwise ValidationError.
SubspaceCheck verify_regular_subspace(const GroundStateModel& g, const ScalingFamily& family,
                                      const SampledWaveFunction& f1, const SampledWaveFunction& f2,
                                      const std::vector<double>& n_grid, double mu,
                                      std::uint64_t seed, int trials = 4);

struct CondensateBasis {
  /// Smallest integer k > (kappa - s) / 2.
  int k = 0;
  /// Degrees of the homogeneous Taylor parts that were kept.
  std::vector<int> degrees;
  /// Orthonormal in L^2(O) on the Simpson grid.
  std::vector<SampledWaveFunction> functions;
  std::vector<std::string> diagnostics;
};

/// Homogeneous parts of P_k restricted to O and orthonormalized. Parts whose
/// coefficients are all below 1e-12 of the largest are dropped with a
/// diagnostic. Requires kappa > s.
CondensateBasis condensate_space_basis(const GroundStateModel& g, const RegionSpec& region,
                                       double kappa, std::size_t points = 0);

/// ||P_S f|| / ||f|| for f on the basis grid; 0 for the zero function.
double singular_fraction(const CondensateBasis& basis, const SampledWaveFunction& f);

}  // namespace gslab
