#pragma once

// Single-particle trapped ground states g1, their scalings
// g_lambda(x) = lambda^(s/2) g1(lambda x), overlaps with test functions,
// and Taylor/moment data at the origin.
//
// Units: hbar = 1 and H = P^2 + V(Q). A harmonic trap of frequency w is
// V(x) = w^2 |x - c|^2, whose ground state is a Gaussian of width 1/sqrt(w)
// with energy s * w.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gslab/wavefunction.hpp"

namespace gslab {

struct HarmonicTrap {
  double frequency = 1.0;
  /// Trap center per axis; empty means the origin.
  std::vector<double> center;
};

/// V sampled on the uniform grid x_i = -L + i * 2L / (n - 1) (one dimension only).
struct SampledTrap {
  std::vector<double> samples;
  double half_width = 0.0;
};

class TrapPotential {
 public:
  static TrapPotential harmonic(int dimension, double frequency, std::vector<double> center = {});
  static TrapPotential sampled(std::vector<double> samples, double half_width);
  template <class Fn>
  static TrapPotential sampled_from(Fn&& v, double half_width, std::size_t count) {
    std::vector<double> s(count);
    for (std::size_t i = 0; i < count; ++i) {
      s[i] = v(-half_width + 2.0 * half_width * static_cast<double>(i) /
                                 static_cast<double>(count - 1));
    }
    return sampled(std::move(s), half_width);
  }

  int dimension() const { return dimension_; }
  const std::variant<HarmonicTrap, SampledTrap>& kind() const { return kind_; }
  /// V(x) in one dimension; sampled potentials use cubic interpolation.
  double operator()(double x) const;

 private:
  TrapPotential(int dimension, std::variant<HarmonicTrap, SampledTrap> kind)
      : dimension_(dimension), kind_(std::move(kind)) {}
  int dimension_ = 1;
  std::variant<HarmonicTrap, SampledTrap> kind_;
};

/// Closed-form (possibly displaced) Gaussian, normalized in s dimensions.
struct AnalyticGaussian {
  double width = 1.0;
  std::vector<double> center;
};

/// Numeric ground state on x_i = -L + i * step, Dirichlet at both ends.
struct GridFunction {
  std::vector<double> values;
  double half_width = 0.0;
  double step = 0.0;
};

struct SolverDiagnostics {
  /// max |g_h - g_{h/2}| over shared nodes before extrapolation.
  double refinement_delta = 0.0;
  /// max |g| over the outer 5% of the box relative to the peak.
  double edge_amplitude = 0.0;
  int inverse_iterations = 0;
};

class GroundStateModel {
 public:
  static GroundStateModel gaussian(int dimension, double width, std::vector<double> center = {});
  static GroundStateModel grid(GridFunction form, double energy, SolverDiagnostics diagnostics);

  int dimension() const { return dimension_; }
  double ground_energy() const { return energy_; }
  bool is_analytic() const { return std::holds_alternative<AnalyticGaussian>(form_); }
  const AnalyticGaussian* gaussian_form() const { return std::get_if<AnalyticGaussian>(&form_); }
  const GridFunction* grid_form() const { return std::get_if<GridFunction>(&form_); }
  const SolverDiagnostics& diagnostics() const { return diagnostics_; }

  double operator()(std::span<const double> x) const;
  double at(double x) const;
  double at_origin() const;
  /// Radius of the box where g1 is known; infinite for the analytic form.
  double domain_radius() const;

  /// 1D Taylor coefficients g1^(m)(0)/m! of the Gaussian factor along `axis`
  /// (amplitude included), m = 0..count-1. Analytic form only.
  std::vector<double> gaussian_axis_taylor(int axis, std::size_t count) const;

 private:
  GroundStateModel(int dimension, std::variant<AnalyticGaussian, GridFunction> form, double energy)
      : dimension_(dimension), form_(std::move(form)), energy_(energy) {}
  double axis_factor(int axis, double x) const;
  double axis_amplitude() const;

  int dimension_ = 1;
  std::variant<AnalyticGaussian, GridFunction> form_;
  double energy_ = 0.0;
  SolverDiagnostics diagnostics_;
};

/// n -> lambda(n) = sigma * n^(-1/kappa).
class ScalingFamily {
 public:
  ScalingFamily(double sigma, double kappa);
  double sigma() const { return sigma_; }
  double kappa() const { return kappa_; }
  double lambda(double n) const;

 private:
  double sigma_;
  double kappa_;
};

/// Lowest eigenpair of -d^2/dx^2 + V. Harmonic traps return the closed form;
/// sampled traps are discretized with second-order central differences on a
/// Dirichlet box, solved at `resolution` and 2*resolution-1 nodes, and
/// Richardson-extrapolated onto the coarse grid.
GroundStateModel solve_ground_state(const TrapPotential& potential, std::size_t resolution = 2048);

/// <g_lambda, f> = integral lambda^(s/2) g1(lambda x) f(x) dx (no conjugation;
/// g1 is real) by Simpson quadrature on f's grid.
Complex scaled_overlap(const GroundStateModel& g, const SampledWaveFunction& f, double lambda);

/// g1(y) - g1(0), evaluated without cancellation for the analytic form.
double deviation_from_origin(const GroundStateModel& g, std::span<const double> y);

struct OverlapEstimate {
  Complex value;
  /// Rounding-error estimate of `value` (not the quadrature error).
  double abs_error = 0.0;
};

/// scaled_overlap plus a floating-point error estimate. For analytic g and
/// small lambda the Taylor part of g1(lambda x) is paired with f's moments
/// separately, so moments that vanish exactly contribute nothing.
OverlapEstimate scaled_overlap_estimate(const GroundStateModel& g, const SampledWaveFunction& f,
                                        double lambda);

/// Polynomial in s variables as (multi-index, coefficient) pairs.
struct Polynomial {
  int dimension = 1;
  std::vector<std::pair<MultiIndex, double>> terms;

  double operator()(std::span<const double> x) const;
  double coefficient(const MultiIndex& alpha) const;
  /// Coefficients of the 1D polynomial, index = power.
  std::vector<double> coefficients_1d() const;
  /// The homogeneous component of the given degree.
  Polynomial homogeneous_part(int degree) const;
};

/// P_k: the Taylor polynomial of g1 at the origin of degree k - 1.
/// Grid ground states support k <= 6.
Polynomial taylor_polynomial(const GroundStateModel& g, int k);

struct Moment {
  MultiIndex alpha;
  Complex value;
};

/// M_alpha = integral f(x) x^alpha dx for all |alpha| <= k - 1.
std::vector<Moment> moment_against_polynomials(const SampledWaveFunction& f, int k);

}  // namespace gslab
