#pragma once

// Closed-form expectations in the n-particle states Omega_{n,lambda} where all
// particles occupy g_lambda: binomial resolvent sums and their bounds, the
// Poisson-type limit, number operators over a region, the critical exponent
// of the regular count and condensation onset.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gslab/groundstate.hpp"
#include "gslab/wavefunction.hpp"

namespace gslab {

/// Largest particle number accepted by the binomial sums.
inline constexpr std::uint64_t kMaxParticles = 10'000'000;

struct ResolventQuery {
  std::uint64_t n = 0;
  /// Transition probability |<g_n, f>|^2 in [0, 1].
  double p = 0.0;
  double mu = 1.0;
};

/// E[h(K)] for K ~ Binomial(n, p). Weights are generated multiplicatively from
/// the mode outward (mode weight 1) and summed with compensation; the result is
/// the ratio of the two sums, so no factorials or logarithms are formed.
double binomial_expectation(std::uint64_t n, double p, const std::function<double(std::uint64_t)>& h);

/// omega_n(R_f(mu)) = sum_k (mu + k)^-1 C(n,k) p^k (1-p)^(n-k).
double resolvent_expectation(const ResolventQuery& q);

struct ResolventBounds {
  /// |omega_n(R_f(mu)) - 1/mu| <= n p / mu^2.
  double regular_bound = 0.0;
  /// omega_n(R_f(mu)) <= (1 + 1/mu) / ((n + 1) p).
  double singular_bound = 0.0;
};

/// Both bounds; p = 0 is rejected because the singular bound is undefined.
ResolventBounds resolvent_bounds(const ResolventQuery& q);
double regular_bound(const ResolventQuery& q);

struct LimitQuery {
  double nu = 0.0;
  double mu = 1.0;
};

struct LimitValues {
  /// e^-nu sum_k (mu + k)^-1 nu^k / k!
  double series_value = 0.0;
  /// mu^-1 (1 - nu e^-nu int_0^1 u^mu e^(nu u) du) by adaptive Gauss-Kronrod.
  double integral_value = 0.0;
};

/// Both forms of the limit expectation; throws NumericalError if they differ
/// by more than 1e-9.
LimitValues poisson_limit(const LimitQuery& q);

/// sum_k k e^-nu nu^k / k! evaluated with the same weights as the series form.
double limit_mean_occupation(double nu);

/// nu_f = sigma^s g1(0)^2 |int f|^2.
double nu_f(const GroundStateModel& g, const SampledWaveFunction& f, double sigma);

struct ConvergenceRow {
  double n = 0.0;
  double lambda = 0.0;
  double p = 0.0;
  double exact = 0.0;
  double limit = 0.0;
  double gap = 0.0;
};

/// Finite-n resolvent expectation against its kappa = s limit, f normalized first.
std::vector<ConvergenceRow> finite_n_limit_convergence(const GroundStateModel& g,
                                                       const SampledWaveFunction& f,
                                                       const ScalingFamily& family, double mu,
                                                       const std::vector<std::uint64_t>& n_list);

struct NumberExpectations {
  double total = 0.0;
  double condensate = 0.0;
  double regular = 0.0;
};

/// Simpson points per axis used for region integrals (2001, 201, 61 for s = 1, 2, 3).
std::size_t default_region_points(int dimension);

/// <N(O)>, <N_S(O)> and <N_R(O)> with S(O) spanned by chi_O. The regular part
/// is computed as n lambda^s int_O (g1(lambda x) - m)^2 with m the mean over O,
/// and total = condensate + regular.
NumberExpectations number_expectations(const GroundStateModel& g, double n, double lambda,
                                       const RegionSpec& region, std::size_t points = 0);

struct CriticalExponent {
  int l = 0;
  double c_O = 0.0;
  double slope = 0.0;
  /// |slope - (s + l)|.
  double snap_residual = 0.0;
  /// RMS residual of the free least-squares fit in log space.
  double fit_rms = 0.0;
};

/// Fits log(<N_R>/n) against log(lambda); c_O comes from the intercept with
/// the slope fixed at the snapped integer s + l.
CriticalExponent critical_exponent(const GroundStateModel& g, const RegionSpec& region,
                                   const std::vector<double>& lambda_grid);

struct OnsetRow {
  std::uint64_t n = 0;
  double lambda = 0.0;
  double condensate = 0.0;
  double regular = 0.0;
};

struct OnsetReport {
  double m_R = 0.0;
  /// First n of the list with <N_S(O)> >= m_R; empty when not reached.
  std::optional<std::uint64_t> n_c;
  int l = 0;
  double c_O = 0.0;
  std::vector<OnsetRow> rows;
};

OnsetReport onset_report(const GroundStateModel& g, const RegionSpec& region,
                         const ScalingFamily& family, const std::vector<std::uint64_t>& n_list,
                         const CriticalExponent& exponent);

enum class SplitObservable { CondensateNumber, RegularNumber };

/// Expectations in the product state with k particles in chi_O and n - k in
/// the normalized remainder h = (1 - P_1) g_lambda / ||(1 - P_1) g_lambda||.
double split_state_expectation(const GroundStateModel& g, std::uint64_t n, std::uint64_t k,
                               double lambda, const RegionSpec& region, SplitObservable observable);

}  // namespace gslab
