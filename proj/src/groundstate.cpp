#include "gslab/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gslab/error.hpp"
#include "gslab/numeric.hpp"

namespace gslab {

namespace {

constexpr int kMaxGridTaylorOrder = 6;
// Taylor order split off in the overlap of analytic ground states.
constexpr int kOverlapTaylorOrder = 8;
constexpr std::size_t kSeriesTerms = 64;
// |y| * sqrt(frequency) up to which the Taylor remainder is summed as a series.
constexpr double kSeriesRadius = 1.5;

// Tridiagonal symmetric matrix: diag[i], off[i] couples i and i+1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots).
std::size_t count_below(const Tridiagonal& t, double x) {
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    d = t.diag[i] - x - (i == 0 ? 0.0 : b2 / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

double lowest_eigenvalue(const Tridiagonal& t) {
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                     (i + 1 < t.diag.size() ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(t, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Solves (T - shift) y = rhs for a positive definite shifted tridiagonal.
std::vector<double> solve_shifted(const Tridiagonal& t, double shift, std::vector<double> rhs) {
  const std::size_t n = t.diag.size();
  std::vector<double> d(n);
  d[0] = t.diag[0] - shift;
  for (std::size_t i = 1; i < n; ++i) {
    const double l = t.off[i - 1] / d[i - 1];
    d[i] = t.diag[i] - shift - l * t.off[i - 1];
    rhs[i] -= l * rhs[i - 1];
  }
  rhs[n - 1] /= d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - t.off[i] * rhs[i + 1]) / d[i];
  return rhs;
}

struct Eigenpair {
  double energy = 0.0;
  std::vector<double> values;  // full grid including Dirichlet endpoints, normalized
  int iterations = 0;
};

Eigenpair solve_dirichlet(const TrapPotential& potential, double half_width, std::size_t nodes) {
  const double h = 2.0 * half_width / static_cast<double>(nodes - 1);
  const std::size_t interior = nodes - 2;
  Tridiagonal t;
  t.diag.resize(interior);
  t.off.assign(interior - 1, -1.0 / (h * h));
  for (std::size_t i = 0; i < interior; ++i) {
    const double x = -half_width + static_cast<double>(i + 1) * h;
    t.diag[i] = 2.0 / (h * h) + potential(x);
  }
  const double e0 = lowest_eigenvalue(t);
  const double shift = e0 - 1e-9 * (std::abs(e0) + 1.0);
  std::vector<double> y(interior, 1.0);
  Eigenpair out;
  bool converged = false;
  for (int it = 1; it <= 50; ++it) {
    std::vector<double> next = solve_shifted(t, shift, y);
    double norm = 0.0;
    for (double v : next) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : next) v /= norm;
    double change = 0.0;
    for (std::size_t i = 0; i < interior; ++i) change = std::max(change, std::abs(next[i] - y[i]));
    y = std::move(next);
    out.iterations = it;
    if (change < 1e-14) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("solve_ground_state: inverse iteration did not converge");
  // Rayleigh quotient.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < interior; ++i) {
    double ty = t.diag[i] * y[i];
    if (i > 0) ty += t.off[i - 1] * y[i - 1];
    if (i + 1 < interior) ty += t.off[i] * y[i + 1];
    num += y[i] * ty;
    den += y[i] * y[i];
  }
  out.energy = num / den;
  out.values.assign(nodes, 0.0);
  std::copy(y.begin(), y.end(), out.values.begin() + 1);
  return out;
}

void normalize_positive(std::vector<double>& values, double step) {
  const auto peak = std::max_element(values.begin(), values.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*peak < 0.0) {
    for (double& v : values) v = -v;
  }
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
  const double norm = std::sqrt(accurate_dot(simpson_weights(values.size(), step), sq));
  for (double& v : values) v /= norm;
}

double power(double x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x;
  return r;
}

double monomial(std::span<const double> x, const MultiIndex& alpha) {
  double r = 1.0;
  for (std::size_t d = 0; d < alpha.size(); ++d) r *= power(x[d], alpha[d]);
  return r;
}

// Taylor remainder machinery for the product Gaussian:
// R_K(y) = sum_{|alpha| >= K} a_alpha y^alpha evaluated without cancellation near 0.
class GaussianRemainder {
 public:
  explicit GaussianRemainder(const GroundStateModel& g) : g_(g) {
    const int s = g.dimension();
    const double w = g.gaussian_form()->width;
    series_radius_ = kSeriesRadius * w;
    for (int d = 0; d < s; ++d) coeffs_.push_back(g.gaussian_axis_taylor(d, kSeriesTerms));
  }

  const std::vector<double>& coefficients(int axis) const {
    return coeffs_[static_cast<std::size_t>(axis)];
  }

  double operator()(std::span<const double> y, int order) const { return remainder(y, 0, order); }

 private:
  double axis_factor(int axis, double y) const {
    const auto* form = g_.gaussian_form();
    const double c = form->center.empty() ? 0.0 : form->center[static_cast<std::size_t>(axis)];
    const double w = form->width;
    const double amp = std::pow(std::numbers::pi * w * w, -0.25);
    const double u = (y - c) / w;
    return amp * std::exp(-0.5 * u * u);
  }

  // sum_{m >= k} a_m y^m along one axis.
  double axis_remainder(int axis, double y, int k) const {
    const auto& a = coeffs_[static_cast<std::size_t>(axis)];
    if (k <= 0) return axis_factor(axis, y);
    if (std::abs(y) <= series_radius_) {
      double sum = 0.0;
      double last = 0.0;
      for (std::size_t m = a.size(); m-- > static_cast<std::size_t>(k);) {
        last = a[m] * power(y, static_cast<int>(m));
        sum += last;
      }
      const double tail = std::abs(a.back() * power(y, static_cast<int>(a.size() - 1)));
      if (tail <= 1e-30 * (1.0 + std::abs(sum))) return sum;
    }
    double head = 0.0;
    for (int m = k - 1; m >= 0; --m) head = head * y + a[static_cast<std::size_t>(m)];
    return axis_factor(axis, y) - head;
  }

  double remainder(std::span<const double> y, int axis, int order) const {
    const int s = g_.dimension();
    if (order <= 0) {
      double prod = 1.0;
      for (int d = axis; d < s; ++d) prod *= axis_factor(d, y[static_cast<std::size_t>(d)]);
      return prod;
    }
    const double ya = y[static_cast<std::size_t>(axis)];
    if (axis == s - 1) return axis_remainder(axis, ya, order);
    const auto& a = coeffs_[static_cast<std::size_t>(axis)];
    double sum = 0.0;
    double ym = 1.0;
    for (int j = 0; j < order; ++j) {
      sum += a[static_cast<std::size_t>(j)] * ym * remainder(y, axis + 1, order - j);
      ym *= ya;
    }
    sum += axis_remainder(axis, ya, order) * remainder(y, axis + 1, 0);
    return sum;
  }

  const GroundStateModel& g_;
  double series_radius_ = 0.0;
  std::vector<std::vector<double>> coeffs_;
};

Complex weighted_sum(const SampledWaveFunction& f, std::span<const double> weights) {
  return {accurate_dot(weights, f.real_part()), accurate_dot(weights, f.imag_part())};
}

}  // namespace

TrapPotential TrapPotential::harmonic(int dimension, double frequency, std::vector<double> center) {
  if (dimension < 1) throw ValidationError("TrapPotential: dimension must be positive");
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw ValidationError("TrapPotential: harmonic frequency must be positive");
  }
  if (!center.empty() && center.size() != static_cast<std::size_t>(dimension)) {
    throw ValidationError("TrapPotential: center needs one coordinate per axis");
  }
  return TrapPotential(dimension, HarmonicTrap{frequency, std::move(center)});
}

TrapPotential TrapPotential::sampled(std::vector<double> samples, double half_width) {
  if (samples.size() < 3) throw ValidationError("TrapPotential: grid potential needs >= 3 samples");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("TrapPotential: box half-width must be positive");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) {
      throw ValidationError("TrapPotential: potential samples must be finite (unbounded below?)");
    }
  }
  return TrapPotential(1, SampledTrap{std::move(samples), half_width});
}

double TrapPotential::operator()(double x) const {
  if (const auto* h = std::get_if<HarmonicTrap>(&kind_)) {
    const double c = h->center.empty() ? 0.0 : h->center[0];
    return h->frequency * h->frequency * (x - c) * (x - c);
  }
  const auto& s = std::get<SampledTrap>(kind_);
  const double step = 2.0 * s.half_width / static_cast<double>(s.samples.size() - 1);
  return interpolate_uniform(s.samples, -s.half_width, step, x,
                             std::min<int>(4, static_cast<int>(s.samples.size())));
}

GroundStateModel GroundStateModel::gaussian(int dimension, double width, std::vector<double> center) {
  if (dimension < 1) throw ValidationError("GroundStateModel: dimension must be positive");
  if (!(width > 0.0)) throw ValidationError("GroundStateModel: width must be positive");
  if (!center.empty() && center.size() != static_cast<std::size_t>(dimension)) {
    throw ValidationError("GroundStateModel: center needs one coordinate per axis");
  }
  const double frequency = 1.0 / (width * width);
  return GroundStateModel(dimension, AnalyticGaussian{width, std::move(center)},
                          dimension * frequency);
}

GroundStateModel GroundStateModel::grid(GridFunction form, double energy,
                                        SolverDiagnostics diagnostics) {
  if (form.values.size() < 7) throw ValidationError("GroundStateModel: grid too small");
  GroundStateModel g(1, std::move(form), energy);
  g.diagnostics_ = diagnostics;
  return g;
}

double GroundStateModel::axis_amplitude() const {
  const double w = std::get<AnalyticGaussian>(form_).width;
  return std::pow(std::numbers::pi * w * w, -0.25);
}

double GroundStateModel::axis_factor(int axis, double x) const {
  const auto& a = std::get<AnalyticGaussian>(form_);
  const double c = a.center.empty() ? 0.0 : a.center[static_cast<std::size_t>(axis)];
  const double u = (x - c) / a.width;
  return axis_amplitude() * std::exp(-0.5 * u * u);
}

double GroundStateModel::operator()(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dimension_)) {
    throw ValidationError("GroundStateModel: point dimension mismatch");
  }
  if (is_analytic()) {
    double v = 1.0;
    for (int d = 0; d < dimension_; ++d) v *= axis_factor(d, x[static_cast<std::size_t>(d)]);
    return v;
  }
  const auto& gf = std::get<GridFunction>(form_);
  if (std::abs(x[0]) >= gf.half_width) return 0.0;
  return interpolate_uniform(gf.values, -gf.half_width, gf.step, x[0]);
}

double GroundStateModel::at(double x) const { return (*this)(std::span<const double>(&x, 1)); }

double GroundStateModel::at_origin() const {
  const std::vector<double> zero(static_cast<std::size_t>(dimension_), 0.0);
  return (*this)(zero);
}

double GroundStateModel::domain_radius() const {
  if (is_analytic()) return std::numeric_limits<double>::infinity();
  return std::get<GridFunction>(form_).half_width;
}

std::vector<double> GroundStateModel::gaussian_axis_taylor(int axis, std::size_t count) const {
  const auto* a = gaussian_form();
  if (a == nullptr) throw ValidationError("gaussian_axis_taylor: analytic ground state required");
  const double omega = 1.0 / (a->width * a->width);
  const double c = a->center.empty() ? 0.0 : a->center[static_cast<std::size_t>(axis)];
  std::vector<double> h(count, 0.0);
  if (count == 0) return h;
  // g' = (omega c - omega x) g  =>  (m+1) h_{m+1} = omega c h_m - omega h_{m-1}.
  h[0] = axis_amplitude() * std::exp(-0.5 * omega * c * c);
  if (count > 1) h[1] = omega * c * h[0];
  for (std::size_t m = 1; m + 1 < count; ++m) {
    h[m + 1] = (omega * c * h[m] - omega * h[m - 1]) / static_cast<double>(m + 1);
  }
  return h;
}

ScalingFamily::ScalingFamily(double sigma, double kappa) : sigma_(sigma), kappa_(kappa) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("ScalingFamily: sigma > 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("ScalingFamily: kappa > 0");
}

double ScalingFamily::lambda(double n) const {
  if (!(n > 0.0)) throw ValidationError("ScalingFamily: n must be positive");
  return sigma_ * std::pow(n, -1.0 / kappa_);
}

GroundStateModel solve_ground_state(const TrapPotential& potential, std::size_t resolution) {
  if (const auto* h = std::get_if<HarmonicTrap>(&potential.kind())) {
    const double width = 1.0 / std::sqrt(h->frequency);
    return GroundStateModel::gaussian(potential.dimension(), width, h->center);
  }
  const auto& trap = std::get<SampledTrap>(potential.kind());
  if (resolution < 128) throw ValidationError("solve_ground_state: resolution must be >= 128");
  const double L = trap.half_width;
  const double h = 2.0 * L / static_cast<double>(resolution - 1);

  Eigenpair coarse = solve_dirichlet(potential, L, resolution);
  Eigenpair fine = solve_dirichlet(potential, L, 2 * resolution - 1);
  normalize_positive(coarse.values, h);
  normalize_positive(fine.values, 0.5 * h);

  SolverDiagnostics diag;
  diag.inverse_iterations = std::max(coarse.iterations, fine.iterations);
  std::vector<double> values(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double gc = coarse.values[i];
    const double gf = fine.values[2 * i];
    diag.refinement_delta = std::max(diag.refinement_delta, std::abs(gf - gc));
    values[i] = (4.0 * gf - gc) / 3.0;
  }
  normalize_positive(values, h);
  const double energy = (4.0 * fine.energy - coarse.energy) / 3.0;

  const double peak = *std::max_element(values.begin(), values.end());
  const auto edge = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(resolution)));
  double edge_max = 0.0;
  for (std::size_t i = 0; i < edge; ++i) {
    edge_max = std::max({edge_max, std::abs(values[i]), std::abs(values[resolution - 1 - i])});
  }
  diag.edge_amplitude = edge_max / peak;
  return GroundStateModel::grid(GridFunction{std::move(values), L, h}, energy, diag);
}

double deviation_from_origin(const GroundStateModel& g, std::span<const double> y) {
  if (y.size() != static_cast<std::size_t>(g.dimension())) {
    throw ValidationError("deviation_from_origin: point dimension mismatch");
  }
  if (!g.is_analytic()) return g(y) - g.at_origin();
  double r = 0.0;
  for (double v : y) r = std::max(r, std::abs(v));
  if (r > kSeriesRadius * g.gaussian_form()->width) return g(y) - g.at_origin();
  return GaussianRemainder(g)(y, 1);
}

OverlapEstimate scaled_overlap_estimate(const GroundStateModel& g, const SampledWaveFunction& f,
                                        double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("scaled_overlap: lambda must be positive");
  }
  if (g.dimension() != f.dimension()) throw ValidationError("scaled_overlap: dimension mismatch");
  const int s = g.dimension();
  const double reach = lambda * f.region().max_abs_coordinate();
  if (reach > g.domain_radius()) {
    std::ostringstream os;
    os << "scaled_overlap: support escapes the ground-state domain; need box half-width L >= "
       << reach << " (have " << g.domain_radius() << ")";
    throw ValidationError(os.str());
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const auto& grid = f.grid();
  const auto& w = grid.weights();
  const double prefactor = std::pow(lambda, 0.5 * s);
  const auto values = f.values();
  std::vector<double> x(static_cast<std::size_t>(s));
  std::vector<double> y(static_cast<std::size_t>(s));
  std::vector<double> wg(grid.size());
  double magnitude = 0.0;

  const auto* gauss = g.gaussian_form();
  const bool split = gauss != nullptr && reach <= kSeriesRadius * gauss->width;
  if (!split) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node(i, x);
      for (int d = 0; d < s; ++d) y[static_cast<std::size_t>(d)] = lambda * x[static_cast<std::size_t>(d)];
      wg[i] = w[i] * g(y);
      magnitude += std::abs(wg[i]) * std::abs(values[i]);
    }
    return {prefactor * weighted_sum(f, wg), 8.0 * eps * prefactor * magnitude};
  }

  // Split g1(lambda x) into its Taylor polynomial (through f's moments) and a
  // remainder evaluated as a convergent tail series; both are Simpson sums on
  // f's grid, organized so that vanishing low moments cancel exactly.
  const GaussianRemainder remainder(g);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    for (int d = 0; d < s; ++d) y[static_cast<std::size_t>(d)] = lambda * x[static_cast<std::size_t>(d)];
    wg[i] = w[i] * remainder(y, kOverlapTaylorOrder);
    magnitude += std::abs(wg[i]) * std::abs(values[i]);
  }
  const Complex tail = weighted_sum(f, wg);
  double error = 8.0 * eps * magnitude;

  CompensatedSum re;
  CompensatedSum im;
  re.add(tail.real());
  im.add(tail.imag());
  const double n = static_cast<double>(grid.size());
  for (const auto& m : moment_against_polynomials(f, kOverlapTaylorOrder)) {
    double coeff = 1.0;
    for (int d = 0; d < s; ++d) {
      coeff *= remainder.coefficients(d)[static_cast<std::size_t>(m.alpha[static_cast<std::size_t>(d)])];
    }
    if (coeff == 0.0) continue;
    const double scale = coeff * power(lambda, total_degree(m.alpha));
    re.add(scale * m.value.real());
    im.add(scale * m.value.imag());
    // Compensated moments: relative eps plus n * eps^2 times the absolute sum.
    double absolute = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node(i, x);
      absolute += std::abs(w[i] * monomial(x, m.alpha)) * std::abs(values[i]);
    }
    error += std::abs(scale) * (4.0 * eps * std::abs(m.value) + n * eps * eps * absolute);
  }
  return {prefactor * Complex(re.value(), im.value()), prefactor * error};
}

Complex scaled_overlap(const GroundStateModel& g, const SampledWaveFunction& f, double lambda) {
  return scaled_overlap_estimate(g, f, lambda).value;
}

double Polynomial::operator()(std::span<const double> x) const {
  CompensatedSum sum;
  for (const auto& [alpha, c] : terms) sum.add(c * monomial(x, alpha));
  return sum.value();
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
  for (const auto& [a, c] : terms) {
    if (a == alpha) return c;
  }
  return 0.0;
}

std::vector<double> Polynomial::coefficients_1d() const {
  if (dimension != 1) throw ValidationError("Polynomial: not one-dimensional");
  int degree = -1;
  for (const auto& t : terms) degree = std::max(degree, t.first[0]);
  std::vector<double> out(static_cast<std::size_t>(degree + 1), 0.0);
  for (const auto& [a, c] : terms) out[static_cast<std::size_t>(a[0])] += c;
  return out;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial p{dimension, {}};
  for (const auto& t : terms) {
    if (total_degree(t.first) == degree) p.terms.push_back(t);
  }
  return p;
}

Polynomial taylor_polynomial(const GroundStateModel& g, int k) {
  if (k < 0) throw ValidationError("taylor_polynomial: degree must be nonnegative");
  Polynomial p{g.dimension(), {}};
  if (k == 0) return p;
  if (g.is_analytic()) {
    std::vector<std::vector<double>> axis;
    for (int d = 0; d < g.dimension(); ++d) {
      axis.push_back(g.gaussian_axis_taylor(d, static_cast<std::size_t>(k)));
    }
    for (const auto& alpha : multi_indices_up_to(g.dimension(), k - 1)) {
      double c = 1.0;
      for (int d = 0; d < g.dimension(); ++d) {
        c *= axis[static_cast<std::size_t>(d)][static_cast<std::size_t>(alpha[static_cast<std::size_t>(d)])];
      }
      p.terms.emplace_back(alpha, c);
    }
    return p;
  }
  if (k > kMaxGridTaylorOrder) {
    throw ValidationError("taylor_polynomial: grid ground states support degree k <= 6");
  }
  const auto& gf = *g.grid_form();
  const auto n = static_cast<long>(gf.values.size());
  const long center = std::lround(gf.half_width / gf.step);
  const long stride = std::max(1L, std::lround(0.08 / gf.step));
  constexpr long radius = 5;
  if (center - radius * stride < 0 || center + radius * stride >= n) {
    throw ValidationError("taylor_polynomial: not enough grid points around the origin");
  }
  std::vector<double> nodes;
  std::vector<double> vals;
  for (long j = -radius; j <= radius; ++j) {
    const long i = center + j * stride;
    nodes.push_back(-gf.half_width + static_cast<double>(i) * gf.step);
    vals.push_back(gf.values[static_cast<std::size_t>(i)]);
  }
  const auto weights = fornberg_weights(0.0, nodes, k - 1);
  double factorial = 1.0;
  for (int m = 0; m < k; ++m) {
    if (m > 0) factorial *= m;
    CompensatedSum d;
    for (std::size_t j = 0; j < nodes.size(); ++j) d.add(weights[static_cast<std::size_t>(m)][j] * vals[j]);
    p.terms.emplace_back(MultiIndex{m}, d.value() / factorial);
  }
  return p;
}

std::vector<Moment> moment_against_polynomials(const SampledWaveFunction& f, int k) {
  if (k < 0) throw ValidationError("moment_against_polynomials: degree must be nonnegative");
  std::vector<Moment> out;
  if (k == 0) return out;
  const auto& grid = f.grid();
  const auto& w = grid.weights();
  const auto re = f.real_part();
  const auto im = f.imag_part();
  std::vector<double> x(static_cast<std::size_t>(f.dimension()));
  std::vector<double> wx(grid.size());
  for (const auto& alpha : multi_indices_up_to(f.dimension(), k - 1)) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node(i, x);
      wx[i] = w[i] * monomial(x, alpha);
    }
    out.push_back({alpha, Complex(accurate_dot(wx, re), accurate_dot(wx, im))});
  }
  return out;
}

}  // namespace gslab
