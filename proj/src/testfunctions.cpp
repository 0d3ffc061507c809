#include "gslab/testfunctions.hpp"

#include <cmath>

#include "gslab/error.hpp"
#include "gslab/numeric.hpp"

namespace gslab {

namespace {

double window(double u) {
  const double v = 1.0 - u * u;
  return v * v * v;
}

}  // namespace

SampledWaveFunction normalized_indicator(const RegionSpec& region, std::size_t points) {
  const double height = 1.0 / std::sqrt(region.volume());
  return SampledWaveFunction::sample_real(TensorGrid(region, points),
                                          [height](std::span<const double>) { return height; });
}

SampledWaveFunction monomial_function(const RegionSpec& region, const MultiIndex& alpha,
                                      std::size_t points) {
  if (alpha.size() != static_cast<std::size_t>(region.dimension())) {
    throw ValidationError("monomial_function: multi-index dimension mismatch");
  }
  return SampledWaveFunction::sample_real(TensorGrid(region, points), [&](std::span<const double> x) {
    double v = 1.0;
    for (std::size_t d = 0; d < alpha.size(); ++d) v *= std::pow(x[d], alpha[d]);
    return v;
  });
}

SampledWaveFunction exact_moment_function(double half_width, int order, std::size_t points) {
  if (!(half_width > 0.0)) throw ValidationError("exact_moment_function: half-width must be positive");
  if (points < 5 || points % 2 == 0 || points > 10001) {
    throw ValidationError("exact_moment_function: need an odd number of points in [5, 10001]");
  }
  if (order < 0 || order > 2) {
    throw ValidationError("exact_moment_function: order must be 0, 1 or 2 (use remove_low_moments)");
  }
  TensorGrid grid(RegionSpec::interval(-half_width, half_width), points);
  const std::size_t mid = (points - 1) / 2;
  std::vector<Complex> values(points, 0.0);
  if (order == 0) {
    for (std::size_t i = 0; i < points; ++i) values[i] = window(grid.coordinate(0, i) / half_width);
    return SampledWaveFunction(std::move(grid), std::move(values));
  }
  if (order == 1) {
    for (std::size_t i = 0; i < mid; ++i) {
      const double u = grid.coordinate(0, i) / half_width;
      values[i] = u * window(u);
      values[points - 1 - i] = -values[i].real();
    }
    return SampledWaveFunction(std::move(grid), std::move(values));
  }
  // Even shape (1 - u^2)^2 (1 - 7 u^2) has zero integral over (-1, 1).
  const double scale = std::ldexp(1.0, 36);
  std::vector<double> q(points, 0.0);
  for (std::size_t i = 0; i < mid; ++i) {
    const double u = grid.coordinate(0, i) / half_width;
    const double v = (1.0 - u * u) * (1.0 - u * u) * (1.0 - 7.0 * u * u);
    q[i] = std::round(v * scale);
    q[points - 1 - i] = q[i];
  }
  // Simpson multipliers 1, 4, 2, ..., 4, 1; the weights are (h/3) * c exactly.
  auto c = [points](std::size_t i) { return (i == 0 || i + 1 == points) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0); };
  double left = 0.0;  // exact: integers below 2^53
  for (std::size_t i = 0; i < mid; ++i) left += c(i) * q[i];
  const double cm = c(mid);
  if (cm == 4.0 && std::fmod(left, 2.0) != 0.0) {
    q[0] += 1.0;
    q[points - 1] += 1.0;
    left += 1.0;
  }
  q[mid] = -2.0 * left / cm;
  for (std::size_t i = 0; i < points; ++i) values[i] = q[i] / scale;
  return SampledWaveFunction(std::move(grid), std::move(values));
}

SampledWaveFunction remove_low_moments(const SampledWaveFunction& f, int k) {
  if (k < 0) throw ValidationError("remove_low_moments: degree must be nonnegative");
  const auto& grid = f.grid();
  const auto& w = grid.weights();
  const std::size_t n = grid.size();
  std::vector<double> x(static_cast<std::size_t>(f.dimension()));
  std::vector<std::vector<double>> basis;
  auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> wa(n);
    for (std::size_t i = 0; i < n; ++i) wa[i] = w[i] * a[i];
    return accurate_dot(wa, b);
  };
  for (const auto& alpha : multi_indices_up_to(f.dimension(), k - 1)) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      grid.node(i, x);
      double v = 1.0;
      for (std::size_t d = 0; d < alpha.size(); ++d) v *= std::pow(x[d], alpha[d]);
      p[i] = v;
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = inner(b, p);
        for (std::size_t i = 0; i < n; ++i) p[i] -= c * b[i];
      }
    }
    const double norm = std::sqrt(inner(p, p));
    if (norm == 0.0) throw NumericalError("remove_low_moments: polynomial basis degenerate on grid");
    for (double& v : p) v /= norm;
    basis.push_back(std::move(p));
  }
  std::vector<double> re = f.real_part();
  std::vector<double> im = f.imag_part();
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const double cr = inner(b, re);
      const double ci = inner(b, im);
      for (std::size_t i = 0; i < n; ++i) {
        re[i] -= cr * b[i];
        im[i] -= ci * b[i];
      }
    }
  }
  std::vector<Complex> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = Complex(re[i], im[i]);
  return SampledWaveFunction(grid, std::move(values));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SampledWaveFunction random_smooth_bump(const RegionSpec& region, std::mt19937_64& rng,
                                       std::size_t points) {
  if (region.dimension() != 1) throw ValidationError("random_smooth_bump: one dimension only");
  const auto& axis = region.axis(0);
  const double mid = 0.5 * (axis.lo + axis.hi);
  const double half = 0.5 * axis.length();
  const int bumps = 2 + static_cast<int>(uniform01(rng) * 2.0);
  struct Bump {
    double amplitude, center, width;
  };
  std::vector<Bump> parts;
  for (int b = 0; b < bumps; ++b) {
    parts.push_back({0.5 + uniform01(rng), -0.6 + 1.2 * uniform01(rng), 0.15 + 0.5 * uniform01(rng)});
  }
  return SampledWaveFunction::sample_real(TensorGrid(region, points), [&](std::span<const double> x) {
    const double u = (x[0] - mid) / half;
    double v = 0.0;
    for (const auto& p : parts) {
      const double z = (u - p.center) / p.width;
      v += p.amplitude * std::exp(-0.5 * z * z);
    }
    return v * window(u);
  });
}

}  // namespace gslab
