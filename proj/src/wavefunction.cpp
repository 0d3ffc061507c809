#include "gslab/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gslab/error.hpp"
#include "gslab/numeric.hpp"

namespace gslab {

RegionSpec::RegionSpec(std::vector<Interval> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ValidationError("RegionSpec: at least one axis required");
  for (const auto& a : axes_) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.lo < a.hi)) {
      throw ValidationError("RegionSpec: each axis needs finite a < b");
    }
  }
}

RegionSpec RegionSpec::cube(int dimension, double lo, double hi) {
  if (dimension < 1) throw ValidationError("RegionSpec::cube: dimension must be positive");
  return RegionSpec(std::vector<Interval>(static_cast<std::size_t>(dimension), Interval{lo, hi}));
}

double RegionSpec::volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.length();
  return v;
}

double RegionSpec::max_abs_coordinate() const {
  double r = 0.0;
  for (const auto& a : axes_) r = std::max({r, std::abs(a.lo), std::abs(a.hi)});
  return r;
}

TensorGrid::TensorGrid(RegionSpec region, std::vector<std::size_t> points_per_axis)
    : region_(std::move(region)), points_(std::move(points_per_axis)) {
  if (points_.size() != static_cast<std::size_t>(region_.dimension())) {
    throw ValidationError("TensorGrid: one point count per axis required");
  }
  size_ = 1;
  std::vector<std::vector<double>> axis_weights;
  for (int d = 0; d < region_.dimension(); ++d) {
    const std::size_t n = points_[static_cast<std::size_t>(d)];
    if (n < 3) throw ValidationError("TensorGrid: need at least 3 points per axis");
    const double h = region_.axis(d).length() / static_cast<double>(n - 1);
    steps_.push_back(h);
    axis_weights.push_back(simpson_weights(n, h));
    size_ *= n;
  }
  weights_.assign(size_, 1.0);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    std::size_t rem = flat;
    double w = 1.0;
    for (int d = region_.dimension() - 1; d >= 0; --d) {
      const std::size_t n = points_[static_cast<std::size_t>(d)];
      w *= axis_weights[static_cast<std::size_t>(d)][rem % n];
      rem /= n;
    }
    weights_[flat] = w;
  }
}

TensorGrid::TensorGrid(RegionSpec region, std::size_t points_per_axis)
    : TensorGrid(region, std::vector<std::size_t>(static_cast<std::size_t>(region.dimension()),
                                                  points_per_axis)) {}

double TensorGrid::coordinate(int axis, std::size_t i) const {
  const auto& a = region_.axis(axis);
  const std::size_t n = points_[static_cast<std::size_t>(axis)];
  if (i == 0) return a.lo;
  if (i + 1 == n) return a.hi;
  const double mid = 0.5 * (a.lo + a.hi);
  const double offset = static_cast<double>(2 * static_cast<long>(i) - static_cast<long>(n - 1));
  return mid + offset * (0.5 * steps_[static_cast<std::size_t>(axis)]);
}

void TensorGrid::node(std::size_t flat, std::span<double> out) const {
  std::size_t rem = flat;
  for (int d = dimension() - 1; d >= 0; --d) {
    const std::size_t n = points_[static_cast<std::size_t>(d)];
    out[static_cast<std::size_t>(d)] = coordinate(d, rem % n);
    rem /= n;
  }
}

SampledWaveFunction::SampledWaveFunction(TensorGrid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("SampledWaveFunction: value count does not match grid");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("SampledWaveFunction: non-finite sample");
    }
  }
  l2norm_ = recompute_norm();
}

SampledWaveFunction SampledWaveFunction::sample(
    TensorGrid grid, const std::function<Complex(std::span<const double>)>& fn) {
  std::vector<Complex> values(grid.size());
  std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    values[i] = fn(x);
  }
  return SampledWaveFunction(std::move(grid), std::move(values));
}

SampledWaveFunction SampledWaveFunction::sample_real(
    TensorGrid grid, const std::function<double(std::span<const double>)>& fn) {
  return sample(std::move(grid), [&](std::span<const double> x) { return Complex(fn(x), 0.0); });
}

double SampledWaveFunction::recompute_norm() const {
  std::vector<double> sq(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) sq[i] = std::norm(values_[i]);
  return std::sqrt(std::max(0.0, accurate_dot(grid_.weights(), sq)));
}

bool SampledWaveFunction::is_real() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Complex& v) { return v.imag() == 0.0; });
}

std::vector<double> SampledWaveFunction::real_part() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].real();
  return out;
}

std::vector<double> SampledWaveFunction::imag_part() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].imag();
  return out;
}

Complex SampledWaveFunction::integral() const {
  return {accurate_dot(grid_.weights(), real_part()), accurate_dot(grid_.weights(), imag_part())};
}

Complex SampledWaveFunction::integrate_against(
    const std::function<double(std::span<const double>)>& weight) const {
  std::vector<double> wx(values_.size());
  std::vector<double> x(static_cast<std::size_t>(dimension()));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    grid_.node(i, x);
    wx[i] = grid_.weights()[i] * weight(x);
  }
  return {accurate_dot(wx, real_part()), accurate_dot(wx, imag_part())};
}

SampledWaveFunction SampledWaveFunction::scaled(Complex c) const {
  std::vector<Complex> v(values_);
  for (auto& x : v) x *= c;
  return SampledWaveFunction(grid_, std::move(v));
}

SampledWaveFunction SampledWaveFunction::normalized() const {
  if (l2norm_ == 0.0) throw ValidationError("SampledWaveFunction: cannot normalize zero function");
  return scaled(1.0 / l2norm_);
}

SampledWaveFunction combine(Complex alpha, const SampledWaveFunction& f1, Complex beta,
                            const SampledWaveFunction& f2) {
  const auto& g1 = f1.grid();
  const auto& g2 = f2.grid();
  bool same = g1.dimension() == g2.dimension();
  for (int d = 0; same && d < g1.dimension(); ++d) {
    same = g1.points(d) == g2.points(d) && g1.region().axis(d).lo == g2.region().axis(d).lo &&
           g1.region().axis(d).hi == g2.region().axis(d).hi;
  }
  if (!same) throw ValidationError("combine: functions must share a grid");
  std::vector<Complex> v(f1.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * f1.values()[i] + beta * f2.values()[i];
  return SampledWaveFunction(g1, std::move(v));
}

std::vector<MultiIndex> multi_indices_up_to(int dimension, int max_degree) {
  std::vector<MultiIndex> out;
  if (dimension < 1) throw ValidationError("multi_indices_up_to: dimension must be positive");
  for (int degree = 0; degree <= max_degree; ++degree) {
    // Compositions of `degree` into `dimension` parts, lexicographically descending.
    MultiIndex alpha(static_cast<std::size_t>(dimension), 0);
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
      if (axis == dimension - 1) {
        alpha[static_cast<std::size_t>(axis)] = remaining;
        out.push_back(alpha);
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        alpha[static_cast<std::size_t>(axis)] = v;
        rec(axis + 1, remaining - v);
      }
    };
    rec(0, degree);
  }
  return out;
}

int total_degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

}  // namespace gslab
