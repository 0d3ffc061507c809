#pragma once

// Compactly supported test functions f used by the scenarios and tests.

#include <cstddef>
#include <cstdint>
#include <random>

#include "gslab/wavefunction.hpp"

namespace gslab {

/// chi_O = |O|^(-1/2) on O.
SampledWaveFunction normalized_indicator(const RegionSpec& region, std::size_t points);

/// f(x) = x^alpha on O (not normalized).
SampledWaveFunction monomial_function(const RegionSpec& region, const MultiIndex& alpha,
                                      std::size_t points);

/// One-dimensional f on a symmetric interval (-a, a) whose first nonvanishing
/// moment has order `order` (0, 1 or 2). Moments below that order vanish
/// exactly in the Simpson quadrature: order 1 is an odd function, order 2 an
/// even function quantized to multiples of 2^-36 with its middle sample fixed
/// so that the weighted sum is exactly zero. `points` must be odd.
SampledWaveFunction exact_moment_function(double half_width, int order, std::size_t points);

/// f minus its L^2(O) projection onto polynomials of degree < k, so that all
/// moments of order < k vanish up to rounding.
SampledWaveFunction remove_low_moments(const SampledWaveFunction& f, int k);

/// Uniform double in [0, 1) from the top 53 bits of the generator output.
double uniform01(std::mt19937_64& rng);

/// Random smooth function supported in `region` (1D): a sum of two or three
/// Gaussian bumps under the window (1 - u^2)^3, u the rescaled coordinate.
SampledWaveFunction random_smooth_bump(const RegionSpec& region, std::mt19937_64& rng,
                                       std::size_t points);

}  // namespace gslab
