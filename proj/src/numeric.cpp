#include "gslab/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "gslab/error.hpp"

namespace gslab {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace

double accurate_dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("accurate_dot: length mismatch");
  if (a.empty()) return 0.0;
  double p = 0.0;
  double s = 0.0;
  two_product(a[0], b[0], p, s);
  for (std::size_t i = 1; i < a.size(); ++i) {
    double h = 0.0;
    double r = 0.0;
    two_product(a[i], b[i], h, r);
    double q = 0.0;
    two_sum(p, h, p, q);
    s += q + r;
  }
  return p + s;
}

std::vector<double> simpson_weights(std::size_t points, double step) {
  if (points < 3) throw ValidationError("simpson_weights: need at least 3 nodes");
  std::vector<double> w(points, 0.0);
  const std::size_t intervals = points - 1;
  const std::size_t simpson_intervals = (intervals % 2 == 0) ? intervals : intervals - 3;
  // Weights are base * {1, 2, 4}; the products are exact in binary floating point.
  const double base = step / 3.0;
  if (simpson_intervals > 0) {
    for (std::size_t i = 0; i <= simpson_intervals; ++i) {
      double c = (i == 0 || i == simpson_intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      w[i] += base * c;
    }
  }
  if (simpson_intervals != intervals) {
    const double b38 = 3.0 * step / 8.0;
    const std::size_t o = simpson_intervals;
    w[o] += b38;
    w[o + 1] += 3.0 * b38;
    w[o + 2] += 3.0 * b38;
    w[o + 3] += b38;
  }
  return w;
}

std::vector<double> logspace(double first, double last, std::size_t count) {
  if (!(first > 0.0) || !(last > 0.0)) throw ValidationError("logspace: bounds must be positive");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  const double a = std::log(first);
  const double b = std::log(last);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = first;
  out.back() = last;
  return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("fit_line: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

double interpolate_uniform(std::span<const double> values, double origin, double step, double x,
                           int order) {
  const auto n = static_cast<long>(values.size());
  if (n < order) throw ValidationError("interpolate_uniform: too few samples");
  const double t = (x - origin) / step;
  long first = static_cast<long>(std::floor(t)) - (order / 2 - 1);
  first = std::clamp(first, 0L, n - order);
  double result = 0.0;
  for (int j = 0; j < order; ++j) {
    double basis = 1.0;
    const double tj = static_cast<double>(first + j);
    for (int m = 0; m < order; ++m) {
      if (m == j) continue;
      const double tm = static_cast<double>(first + m);
      basis *= (t - tm) / (tj - tm);
    }
    result += basis * values[static_cast<std::size_t>(first + j)];
  }
  return result;
}

std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> nodes,
                                                  int max_order) {
  const std::size_t n = nodes.size();
  if (n == 0 || max_order < 0 || static_cast<std::size_t>(max_order) >= n) {
    throw ValidationError("fornberg_weights: need more nodes than the derivative order");
  }
  const auto m = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

}  // namespace gslab
