#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace gslab {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Dot product with the accuracy of twice the working precision
/// (error-free TwoProduct/TwoSum transformations).
double accurate_dot(std::span<const double> a, std::span<const double> b);

/// Composite Simpson weights for `points` equally spaced nodes with spacing `step`.
/// An odd number of intervals closes with the 3/8 rule on the last three.
/// Requires points >= 3.
std::vector<double> simpson_weights(std::size_t points, double step);

/// `count` logarithmically spaced values from `first` to `last` inclusive.
std::vector<double> logspace(double first, double last, std::size_t count);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Lagrange interpolation of samples on the uniform grid x_i = origin + i * step,
/// using the `order` nodes nearest to x (shifted inward at the ends).
double interpolate_uniform(std::span<const double> values, double origin, double step,
                           double x, int order = 6);

/// Finite-difference weights (Fornberg) for derivatives 0..max_order at z.
/// Result is indexed [order][node].
std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> nodes,
                                                  int max_order);

}  // namespace gslab
