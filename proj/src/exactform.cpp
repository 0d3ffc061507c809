#include "gslab/exactform.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "gslab/error.hpp"
#include "gslab/kernels.hpp"
#include "gslab/numeric.hpp"

namespace gslab {

namespace {

void validate(const ResolventQuery& q) {
  if (!(q.p >= 0.0 && q.p <= 1.0)) throw ValidationError("resolvent query: p must lie in [0, 1]");
  if (!(q.mu > 0.0) || !std::isfinite(q.mu)) throw ValidationError("resolvent query: mu must be positive");
  if (q.n > kMaxParticles) throw ValidationError("resolvent query: n exceeds 10^7");
}

void validate(const LimitQuery& q) {
  if (!(q.nu >= 0.0) || q.nu > 1e12) throw ValidationError("limit query: nu must lie in [0, 1e12]");
  if (!(q.mu > 0.0) || !std::isfinite(q.mu)) throw ValidationError("limit query: mu must be positive");
}

// E[h(K)] for K ~ Poisson(nu), weights relative to the mode. Each direction
// stops once the term is below 1e-16 of the partial sum and the geometric
// bound on the remaining probability is below 1e-14.
double poisson_expectation(double nu, const std::function<double(double)>& h) {
  if (nu == 0.0) return h(0.0);
  const double mode = std::floor(nu);
  CompensatedSum s;
  CompensatedSum w;
  s.add(h(mode));
  w.add(1.0);
  auto done = [&](double weight, double term, double next_ratio) {
    if (weight == 0.0) return true;
    if (!(next_ratio < 1.0)) return false;
    const double tail = weight * next_ratio / (1.0 - next_ratio);
    return std::abs(term) < 1e-16 * std::abs(s.value()) && tail < 1e-14 * w.value();
  };
  double weight = 1.0;
  for (double k = mode;; k += 1.0) {
    weight *= nu / (k + 1.0);
    const double term = weight * h(k + 1.0);
    s.add(term);
    w.add(weight);
    if (done(weight, term, nu / (k + 2.0))) break;
  }
  weight = 1.0;
  for (double k = mode; k > 0.0; k -= 1.0) {
    weight *= k / nu;
    const double term = weight * h(k - 1.0);
    s.add(term);
    w.add(weight);
    if (done(weight, term, (k - 1.0) / nu)) break;
  }
  return s.value() / w.value();
}

void check_support(const GroundStateModel& g, const RegionSpec& region, double lambda,
                   const char* who) {
  const double reach = lambda * region.max_abs_coordinate();
  if (reach > g.domain_radius()) {
    std::ostringstream os;
    os << who << ": lambda * O escapes the ground-state domain; need box half-width L >= " << reach
       << " (have " << g.domain_radius() << ")";
    throw ValidationError(os.str());
  }
}

// Quadrature pieces shared by the number operators and split states:
// volume, int_O g1(lambda x) dx and int_O (g1(lambda x) - mean)^2 dx.
struct RegionIntegrals {
  double volume = 0.0;
  double integral = 0.0;
  double variance = 0.0;
};

RegionIntegrals region_integrals(const GroundStateModel& g, double lambda, const RegionSpec& region,
                                 std::size_t points) {
  if (region.dimension() != g.dimension()) throw ValidationError("region dimension mismatch");
  const TensorGrid grid(region, points == 0 ? default_region_points(region.dimension()) : points);
  const auto& w = grid.weights();
  const auto s = static_cast<std::size_t>(g.dimension());
  std::vector<double> x(s);
  std::vector<double> y(s);
  std::vector<double> values(grid.size());
  std::vector<double> deviation(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x);
    for (std::size_t d = 0; d < s; ++d) y[d] = lambda * x[d];
    values[i] = g(y);
    deviation[i] = deviation_from_origin(g, y);
  }
  RegionIntegrals out;
  CompensatedSum volume;
  for (double v : w) volume.add(v);
  out.volume = volume.value();
  out.integral = accurate_dot(w, values);
  const double mean = accurate_dot(w, deviation) / out.volume;
  for (double& d : deviation) d = (d - mean) * (d - mean);
  out.variance = accurate_dot(w, deviation);
  return out;
}

}  // namespace

double binomial_expectation(std::uint64_t n, double p,
                            const std::function<double(std::uint64_t)>& h) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("binomial_expectation: p must lie in [0, 1]");
  if (n > kMaxParticles) throw ValidationError("binomial_expectation: n exceeds 10^7");
  if (p == 0.0 || n == 0) return h(0);
  if (p == 1.0) return h(n);
  const double r = p / (1.0 - p);
  const auto nd = static_cast<double>(n);
  const auto mode = std::min<std::uint64_t>(
      n, static_cast<std::uint64_t>(std::floor((nd + 1.0) * p)));
  CompensatedSum s;
  CompensatedSum w;
  s.add(h(mode));
  w.add(1.0);
  // Ratios w_{k+1}/w_k decrease in k, so past the mode the remaining mass is
  // bounded by a geometric series.
  auto negligible = [&](double weight, double next_ratio) {
    if (weight == 0.0) return true;
    return next_ratio < 1.0 && weight * next_ratio / (1.0 - next_ratio) <= 1e-17 * w.value();
  };
  double weight = 1.0;
  for (std::uint64_t k = mode; k < n; ++k) {
    const auto kd = static_cast<double>(k);
    weight *= (nd - kd) / (kd + 1.0) * r;
    s.add(weight * h(k + 1));
    w.add(weight);
    if (negligible(weight, (nd - kd - 1.0) / (kd + 2.0) * r)) break;
  }
  weight = 1.0;
  for (std::uint64_t k = mode; k > 0; --k) {
    const auto kd = static_cast<double>(k);
    weight *= kd / ((nd - kd + 1.0) * r);
    s.add(weight * h(k - 1));
    w.add(weight);
    if (negligible(weight, (kd - 1.0) / ((nd - kd + 2.0) * r))) break;
  }
  return s.value() / w.value();
}

double resolvent_expectation(const ResolventQuery& q) {
  validate(q);
  if (q.p == 0.0) return 1.0 / q.mu;
  if (q.p == 1.0) return 1.0 / (q.mu + static_cast<double>(q.n));
  const double mu = q.mu;
  return binomial_expectation(q.n, q.p,
                              [mu](std::uint64_t k) { return 1.0 / (mu + static_cast<double>(k)); });
}

double regular_bound(const ResolventQuery& q) {
  validate(q);
  return static_cast<double>(q.n) * q.p / (q.mu * q.mu);
}

ResolventBounds resolvent_bounds(const ResolventQuery& q) {
  validate(q);
  if (q.p == 0.0) throw ValidationError("resolvent_bounds: singular bound needs p > 0");
  ResolventBounds b;
  b.regular_bound = regular_bound(q);
  b.singular_bound = (1.0 + 1.0 / q.mu) / ((static_cast<double>(q.n) + 1.0) * q.p);
  return b;
}

LimitValues poisson_limit(const LimitQuery& q) {
  validate(q);
  LimitValues out;
  if (q.nu == 0.0) {
    out.series_value = out.integral_value = 1.0 / q.mu;
    return out;
  }
  const double mu = q.mu;
  const double nu = q.nu;
  out.series_value = poisson_expectation(nu, [mu](double k) { return 1.0 / (mu + k); });

  // u^mu is singular at 0 for small mu; tanh-sinh absorbs endpoint singularities.
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  const double integral = integrator.integrate(
      [mu, nu](double u) { return nu * std::pow(u, mu) * std::exp(-nu * (1.0 - u)); }, 0.0, 1.0, 1e-15);
  out.integral_value = (1.0 - integral) / mu;

  if (!(std::abs(out.series_value - out.integral_value) <= 1e-9)) {
    std::ostringstream os;
    os.precision(17);
    os << "poisson_limit: series " << out.series_value << " and integral " << out.integral_value
       << " disagree (nu=" << nu << ", mu=" << mu << ")";
    throw NumericalError(os.str());
  }
  return out;
}

double limit_mean_occupation(double nu) {
  validate(LimitQuery{nu, 1.0});
  return poisson_expectation(nu, [](double k) { return k; });
}

double nu_f(const GroundStateModel& g, const SampledWaveFunction& f, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("nu_f: sigma must be positive");
  if (g.dimension() != f.dimension()) throw ValidationError("nu_f: dimension mismatch");
  const double g0 = g.at_origin();
  return std::pow(sigma, g.dimension()) * g0 * g0 * std::norm(f.integral());
}

std::vector<ConvergenceRow> finite_n_limit_convergence(const GroundStateModel& g,
                                                       const SampledWaveFunction& f,
                                                       const ScalingFamily& family, double mu,
                                                       const std::vector<std::uint64_t>& n_list) {
  const double s = g.dimension();
  if (std::abs(family.kappa() - s) > 1e-12 * s) {
    throw ValidationError("finite_n_limit_convergence: requires kappa = s");
  }
  const SampledWaveFunction fn = f.normalized();
  const double limit = poisson_limit({nu_f(g, fn, family.sigma()), mu}).series_value;
  std::vector<double> lambdas;
  for (auto n : n_list) lambdas.push_back(family.lambda(static_cast<double>(n)));
  const auto overlaps = overlap_sweep(g, fn, lambdas);
  std::vector<ResolventQuery> queries;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    queries.push_back({n_list[i], std::min(1.0, std::norm(overlaps[i].value)), mu});
  }
  const auto exact = resolvent_batch(queries);
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    rows.push_back({static_cast<double>(n_list[i]), lambdas[i], queries[i].p, exact[i], limit,
                    std::abs(exact[i] - limit)});
  }
  return rows;
}

std::size_t default_region_points(int dimension) {
  switch (dimension) {
    case 1:
      return 2001;
    case 2:
      return 201;
    case 3:
      return 61;
    default:
      return 21;
  }
}

NumberExpectations number_expectations(const GroundStateModel& g, double n, double lambda,
                                       const RegionSpec& region, std::size_t points) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw ValidationError("number_expectations: n must be >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("number_expectations: lambda must be positive");
  }
  check_support(g, region, lambda, "number_expectations");
  NumberExpectations out;
  if (n == 0.0) return out;
  const RegionIntegrals r = region_integrals(g, lambda, region, points);
  const double scale = n * std::pow(lambda, g.dimension());
  out.condensate = scale * r.integral * r.integral / r.volume;
  out.regular = scale * r.variance;
  out.total = out.condensate + out.regular;
  return out;
}

CriticalExponent critical_exponent(const GroundStateModel& g, const RegionSpec& region,
                                   const std::vector<double>& lambda_grid) {
  if (lambda_grid.size() < 4) throw ValidationError("critical_exponent: need >= 4 lambda values");
  const auto [lo, hi] = std::minmax_element(lambda_grid.begin(), lambda_grid.end());
  if (!(*lo > 0.0) || *hi / *lo < 100.0 * (1.0 - 1e-12)) {
    throw ValidationError("critical_exponent: lambda grid must span two decades in (0, max]");
  }
  const std::vector<double> ones(lambda_grid.size(), 1.0);
  const auto counts = number_sweep(g, region, ones, lambda_grid, 0);
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!(counts[i].regular > 0.0)) {
      throw NumericalError("critical_exponent: regular count vanishes (degenerate region?)");
    }
    lx.push_back(std::log(lambda_grid[i]));
    ly.push_back(std::log(counts[i].regular));
  }
  const LinearFit fit = fit_line(lx, ly);
  CriticalExponent out;
  out.slope = fit.slope;
  out.fit_rms = fit.rms_residual;
  const double snapped = std::round(fit.slope);
  out.snap_residual = std::abs(fit.slope - snapped);
  if (out.snap_residual > 0.1) {
    std::ostringstream os;
    os << "critical_exponent: slope " << fit.slope
       << " is not within 0.1 of an integer; widen or shift the lambda range";
    throw NumericalError(os.str());
  }
  out.l = static_cast<int>(snapped) - g.dimension();
  if (out.l < 1) {
    throw NumericalError("critical_exponent: fitted slope gives l < 1");
  }
  CompensatedSum intercept;
  for (std::size_t i = 0; i < lx.size(); ++i) intercept.add(ly[i] - snapped * lx[i]);
  out.c_O = std::exp(intercept.value() / static_cast<double>(lx.size()));
  return out;
}

OnsetReport onset_report(const GroundStateModel& g, const RegionSpec& region,
                         const ScalingFamily& family, const std::vector<std::uint64_t>& n_list,
                         const CriticalExponent& exponent) {
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] == 0 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw ValidationError("onset_report: n_list must be positive and strictly increasing");
    }
  }
  OnsetReport out;
  out.l = exponent.l;
  out.c_O = exponent.c_O;
  out.m_R = exponent.c_O * std::pow(family.sigma(), g.dimension() + exponent.l);
  std::vector<double> ns;
  std::vector<double> lambdas;
  for (auto n : n_list) {
    ns.push_back(static_cast<double>(n));
    lambdas.push_back(family.lambda(static_cast<double>(n)));
  }
  const auto counts = number_sweep(g, region, ns, lambdas, 0);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    out.rows.push_back({n_list[i], lambdas[i], counts[i].condensate, counts[i].regular});
    if (!out.n_c && counts[i].condensate >= out.m_R) out.n_c = n_list[i];
  }
  return out;
}

double split_state_expectation(const GroundStateModel& g, std::uint64_t n, std::uint64_t k,
                               double lambda, const RegionSpec& region, SplitObservable observable) {
  if (k > n) throw ValidationError("split_state_expectation: need 0 <= k <= n");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("split_state_expectation: lambda must be positive");
  }
  check_support(g, region, lambda, "split_state_expectation");
  if (observable == SplitObservable::CondensateNumber) return static_cast<double>(k);
  if (k == n) return 0.0;
  const RegionIntegrals r = region_integrals(g, lambda, region, 0);
  const double scale = std::pow(lambda, g.dimension());
  // ||(1 - P_1) g_lambda||^2 = 1 - <chi_O, g_lambda>^2.
  const double remainder_norm2 = 1.0 - scale * r.integral * r.integral / r.volume;
  if (!(remainder_norm2 >= 1e-14)) {
    throw ValidationError("split_state_expectation: (1 - P_1) g_lambda vanishes; split undefined");
  }
  return static_cast<double>(n - k) * scale * r.variance / remainder_norm2;
}

}  // namespace gslab
