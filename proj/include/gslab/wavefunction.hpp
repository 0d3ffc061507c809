#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gslab {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Bounded box region O = [a_1, b_1] x ... x [a_s, b_s].
class RegionSpec {
 public:
  explicit RegionSpec(std::vector<Interval> axes);

  static RegionSpec interval(double lo, double hi) { return RegionSpec({{lo, hi}}); }
  static RegionSpec cube(int dimension, double lo, double hi);

  int dimension() const { return static_cast<int>(axes_.size()); }
  const Interval& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  const std::vector<Interval>& axes() const { return axes_; }
  double volume() const;
  /// Largest |x_i| over the box, per axis maximum.
  double max_abs_coordinate() const;

 private:
  std::vector<Interval> axes_;
};

/// Tensor-product grid of equally spaced nodes (endpoints included) over a region.
/// Flat indices are row-major: the last axis varies fastest.
class TensorGrid {
 public:
  TensorGrid(RegionSpec region, std::vector<std::size_t> points_per_axis);
  TensorGrid(RegionSpec region, std::size_t points_per_axis);

  const RegionSpec& region() const { return region_; }
  int dimension() const { return region_.dimension(); }
  std::size_t size() const { return size_; }
  std::size_t points(int axis) const { return points_[static_cast<std::size_t>(axis)]; }
  double step(int axis) const { return steps_[static_cast<std::size_t>(axis)]; }
  /// Node coordinate along one axis. Symmetric intervals give exactly symmetric nodes.
  double coordinate(int axis, std::size_t i) const;
  void node(std::size_t flat, std::span<double> out) const;
  /// Tensor-product composite Simpson weights, flat.
  const std::vector<double>& weights() const { return weights_; }

 private:
  RegionSpec region_;
  std::vector<std::size_t> points_;
  std::vector<double> steps_;
  std::size_t size_ = 0;
  std::vector<double> weights_;
};

/// Compactly supported test function f sampled on a grid over its region;
/// identically zero outside the region.
class SampledWaveFunction {
 public:
  SampledWaveFunction(TensorGrid grid, std::vector<Complex> values);

  static SampledWaveFunction sample(TensorGrid grid,
                                    const std::function<Complex(std::span<const double>)>& fn);
  static SampledWaveFunction sample_real(TensorGrid grid,
                                         const std::function<double(std::span<const double>)>& fn);

  const TensorGrid& grid() const { return grid_; }
  const RegionSpec& region() const { return grid_.region(); }
  int dimension() const { return grid_.dimension(); }
  std::span<const Complex> values() const { return values_; }
  double l2norm() const { return l2norm_; }
  double recompute_norm() const;
  bool is_real() const;

  /// Quadrature integral of f over its region.
  Complex integral() const;
  /// Quadrature of f(x) * w(x) for a real weight evaluated at the nodes.
  Complex integrate_against(const std::function<double(std::span<const double>)>& weight) const;

  SampledWaveFunction scaled(Complex c) const;
  SampledWaveFunction normalized() const;

  std::vector<double> real_part() const;
  std::vector<double> imag_part() const;

 private:
  TensorGrid grid_;
  std::vector<Complex> values_;
  double l2norm_ = 0.0;
};

/// alpha * f1 + beta * f2 on a shared grid.
SampledWaveFunction combine(Complex alpha, const SampledWaveFunction& f1, Complex beta,
                            const SampledWaveFunction& f2);

/// All multi-indices of `dimension` components with total degree <= max_degree,
/// graded, lexicographic (descending) within each degree.
std::vector<MultiIndex> multi_indices_up_to(int dimension, int max_degree);

int total_degree(const MultiIndex& alpha);

}  // namespace gslab
