#include "gslab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gslab/error.hpp"
#include "gslab/exactform.hpp"
#include "gslab/kernels.hpp"
#include "gslab/numeric.hpp"
#include "gslab/testfunctions.hpp"

namespace gslab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kAnalyticOrders = 8;
constexpr int kGridOrders = 6;

// Taylor coefficients of a grid ground state carry finite-difference noise.
double taylor_floor(const GroundStateModel& g) { return g.is_analytic() ? 1e-12 : 1e-8; }

bool same_kappa(double kappa, int s) { return std::abs(kappa - s) <= 1e-12 * s; }

void check_grid(const std::vector<double>& n_grid) {
  if (n_grid.size() < 12) throw ValidationError("classify: n_grid needs at least 12 values");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (!(n_grid[i] > 0.0) || !std::isfinite(n_grid[i])) {
      throw ValidationError("classify: n values must be positive and finite");
    }
    if (i > 0 && !(n_grid[i] > n_grid[i - 1])) {
      throw ValidationError("classify: n_grid must be strictly increasing");
    }
  }
  if (n_grid.back() < 1e3 * n_grid.front() * (1.0 - 1e-12)) {
    throw ValidationError("classify: n_grid must span at least three decades");
  }
}

double monomial_at(std::span<const double> x, const MultiIndex& alpha) {
  double v = 1.0;
  for (std::size_t d = 0; d < alpha.size(); ++d) v *= std::pow(x[d], alpha[d]);
  return v;
}

// Lowest m whose degree-m Taylor terms pair with f's moments to a value above
// the rounding floor of that pairing.
int leading_order(const GroundStateModel& g, const SampledWaveFunction& f) {
  const int orders = g.is_analytic() ? kAnalyticOrders : kGridOrders;
  const Polynomial p = taylor_polynomial(g, orders);
  double largest = 0.0;
  for (const auto& t : p.terms) largest = std::max(largest, std::abs(t.second));
  const double cutoff = taylor_floor(g) * largest;

  const auto moments = moment_against_polynomials(f, orders);
  const auto& grid = f.grid();
  const auto& w = grid.weights();
  const auto values = f.values();
  std::vector<double> x(static_cast<std::size_t>(f.dimension()));
  for (int m = 0; m < orders; ++m) {
    Complex pairing = 0.0;
    double floor = 0.0;
    for (const auto& mom : moments) {
      if (total_degree(mom.alpha) != m) continue;
      const double a = p.coefficient(mom.alpha);
      if (std::abs(a) <= cutoff) continue;
      double absolute = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node(i, x);
        absolute += std::abs(w[i] * monomial_at(x, mom.alpha)) * std::abs(values[i]);
      }
      pairing += a * mom.value;
      floor += 8.0 * kEps * std::abs(a) * absolute;
    }
    if (std::abs(pairing) > floor) return m;
  }
  return -1;
}

// |int f| below its own rounding floor counts as zero.
bool integral_vanishes(const SampledWaveFunction& f) {
  const auto& w = f.grid().weights();
  const auto values = f.values();
  double absolute = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) absolute += std::abs(w[i] * values[i]);
  return std::abs(f.integral()) <= 8.0 * kEps * absolute;
}

bool decreasing(const std::vector<ClassificationRow>& rows, std::size_t from) {
  for (std::size_t i = from + 1; i < rows.size(); ++i) {
    if (rows[i].np > rows[i - 1].np * (1.0 + 1e-12)) return false;
  }
  return true;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Complex inner(const std::vector<double>& w, std::span<const Complex> u, std::span<const Complex> v) {
  CompensatedSum re;
  CompensatedSum im;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Complex t = w[i] * std::conj(u[i]) * v[i];
    re.add(t.real());
    im.add(t.imag());
  }
  return {re.value(), im.value()};
}

bool same_grid(const TensorGrid& a, const TensorGrid& b) {
  if (a.dimension() != b.dimension() || a.size() != b.size()) return false;
  for (int d = 0; d < a.dimension(); ++d) {
    if (a.points(d) != b.points(d)) return false;
    if (a.region().axis(d).lo != b.region().axis(d).lo) return false;
    if (a.region().axis(d).hi != b.region().axis(d).hi) return false;
  }
  return true;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Regular:
      return "Regular";
    case Verdict::SingularOverlap:
      return "SingularOverlap";
    case Verdict::Coexistence:
      return "Coexistence";
    case Verdict::Withheld:
      return "Withheld";
  }
  return "Withheld";
}

ClassificationReport classify_function(const GroundStateModel& g, const SampledWaveFunction& f,
                                       const ScalingFamily& family,
                                       const std::vector<double>& n_grid) {
  check_grid(n_grid);
  if (g.dimension() != f.dimension()) throw ValidationError("classify: dimension mismatch");

  ClassificationReport report;
  report.kappa = family.kappa();
  report.s = g.dimension();
  report.nu_f = std::numeric_limits<double>::quiet_NaN();

  std::vector<double> lambdas;
  for (double n : n_grid) lambdas.push_back(family.lambda(n));
  const auto overlaps = overlap_sweep(g, f, lambdas);
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const double a = std::abs(overlaps[i].value);
    const double p = a <= overlaps[i].abs_error ? 0.0 : a * a;
    if (p == 0.0) ++zeros;
    report.rows.push_back({n_grid[i], lambdas[i], p, n_grid[i] * p});
  }

  report.leading_order = leading_order(g, f);
  report.predicted_exponent =
      report.leading_order < 0
          ? std::numeric_limits<double>::quiet_NaN()
          : 1.0 - (report.s + 2.0 * report.leading_order) / report.kappa;

  if (zeros == report.rows.size()) {
    report.fitted_exponent = -std::numeric_limits<double>::infinity();
    report.verdict = Verdict::Regular;
    report.diagnostics.push_back("all overlaps vanish to rounding; p_n = 0");
    return report;
  }

  // Fit the second half; fall back to every positive point when the tail has
  // decayed below the rounding floor.
  const std::size_t half = report.rows.size() / 2;
  const bool tail_zero = report.rows.back().p == 0.0;
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = tail_zero ? 0 : half; i < report.rows.size(); ++i) {
    if (report.rows[i].p > 0.0) {
      lx.push_back(std::log(report.rows[i].n));
      ly.push_back(std::log(report.rows[i].np));
    }
  }
  if (lx.size() >= 2) {
    const LinearFit fit = fit_line(lx, ly);
    report.fitted_exponent = fit.slope;
    report.fit_rms = fit.rms_residual;
  } else {
    report.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
  }
  if (zeros > 0) {
    report.diagnostics.push_back(std::to_string(zeros) + " overlaps below the rounding floor set to 0");
  }

  if (tail_zero) {
    report.verdict = Verdict::Regular;
    report.diagnostics.push_back("n p_n decays below rounding on the tail");
    return report;
  }

  if (same_kappa(report.kappa, report.s)) {
    const double nu = integral_vanishes(f) ? 0.0 : nu_f(g, f, family.sigma());
    report.nu_f = nu;
    if (nu > 0.0) {
      const double last = report.rows.back().np;
      if (std::abs(last - nu) <= 0.05 * nu) {
        report.verdict = Verdict::Coexistence;
      } else {
        report.verdict = Verdict::Withheld;
        report.diagnostics.push_back("kappa = s but n p_n = " + format_number(last) +
                                     " is not within 5% of nu_f = " + format_number(nu));
      }
      return report;
    }
  }

  const double e = report.fitted_exponent;
  if (e > kExponentTolerance) {
    report.verdict = Verdict::SingularOverlap;
  } else if (e < -kExponentTolerance && decreasing(report.rows, half)) {
    report.verdict = Verdict::Regular;
  } else {
    report.verdict = Verdict::Withheld;
    if (std::isnan(e)) {
      report.diagnostics.push_back("too few nonzero overlaps to fit an exponent");
    } else if (e < -kExponentTolerance) {
      report.diagnostics.push_back("negative exponent but n p_n is not decreasing on the tail");
    } else {
      report.diagnostics.push_back("fitted exponent " + format_number(e) +
                                   " within the tolerance of 0; threshold case");
    }
  }
  return report;
}

SubspaceCheck verify_regular_subspace(const GroundStateModel& g, const ScalingFamily& family,
                                      const SampledWaveFunction& f1, const SampledWaveFunction& f2,
                                      const std::vector<double>& n_grid, double mu,
                                      std::uint64_t seed, int trials) {
  if (!(mu > 0.0)) throw ValidationError("verify_regular_subspace: mu must be positive");
  if (trials < 1) throw ValidationError("verify_regular_subspace: trials must be >= 1");
  if (!same_grid(f1.grid(), f2.grid())) {
    throw ValidationError("verify_regular_subspace: f1 and f2 must share a grid");
  }
  for (const auto* f : {&f1, &f2}) {
    const auto r = classify_function(g, *f, family, n_grid);
    if (r.verdict != Verdict::Regular) {
      throw ValidationError("verify_regular_subspace: input classified " + verdict_name(r.verdict) +
                            ", not Regular");
    }
  }

  SubspaceCheck out;
  out.ok = true;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Complex alpha = 0.0;
    Complex beta = 0.0;
    if (t > 0) {
      alpha = {2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
      beta = {2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
    }
    const auto r = classify_function(g, combine(alpha, f1, beta, f2), family, n_grid);
    out.alphas.push_back(alpha);
    out.betas.push_back(beta);
    out.verdicts.push_back(r.verdict);
    if (r.verdict != Verdict::Regular) out.ok = false;
  }

  std::vector<double> tail;
  for (double n : n_grid) {
    if (n <= static_cast<double>(kMaxParticles)) tail.push_back(std::round(n));
  }
  if (tail.size() < 2) {
    throw ValidationError("verify_regular_subspace: needs two n values <= 1e7 for the score");
  }
  if (tail.size() > 4) tail.erase(tail.begin(), tail.end() - 4);

  const auto sum = combine(1.0, f1, 1.0, f2);
  const bool zero = sum.l2norm() == 0.0;
  const auto h = zero ? sum : sum.normalized();
  double previous = std::numeric_limits<double>::infinity();
  for (double n : tail) {
    double p = 0.0;
    if (!zero) {
      const auto o = scaled_overlap_estimate(g, h, family.lambda(n));
      const double a = std::abs(o.value);
      p = a <= o.abs_error ? 0.0 : std::min(1.0, a * a);
    }
    const double score = mu * resolvent_expectation({static_cast<std::uint64_t>(n), p, mu});
    const double deviation = std::abs(1.0 - score);
    if (deviation > previous * (1.0 + 1e-9) + 1e-15) {
      out.ok = false;
      out.diagnostics.push_back("score deviation grows at n = " + format_number(n));
    }
    previous = deviation;
    out.tail_n.push_back(n);
    out.tail_score.push_back(score);
  }
  return out;
}

CondensateBasis condensate_space_basis(const GroundStateModel& g, const RegionSpec& region,
                                       double kappa, std::size_t points) {
  const int s = g.dimension();
  if (region.dimension() != s) throw ValidationError("condensate_space_basis: dimension mismatch");
  if (!(kappa > s) || !std::isfinite(kappa)) {
    throw ValidationError("condensate_space_basis: requires kappa > s");
  }
  CondensateBasis out;
  out.k = static_cast<int>(std::floor((kappa - s) / 2.0)) + 1;
  const int limit = g.is_analytic() ? kAnalyticOrders : kGridOrders;
  if (out.k > limit) {
    throw ValidationError("condensate_space_basis: degree k = " + std::to_string(out.k) +
                          " exceeds the supported " + std::to_string(limit));
  }
  if (points == 0) points = default_region_points(s);

  const Polynomial p = taylor_polynomial(g, out.k);
  double largest = 0.0;
  for (const auto& t : p.terms) largest = std::max(largest, std::abs(t.second));
  const double cutoff = taylor_floor(g) * largest;

  const TensorGrid grid(region, points);
  const auto& w = grid.weights();
  std::vector<std::vector<Complex>> kept;
  for (int d = 0; d < out.k; ++d) {
    const Polynomial part = p.homogeneous_part(d);
    double size = 0.0;
    for (const auto& t : part.terms) size = std::max(size, std::abs(t.second));
    if (size <= cutoff) {
      out.diagnostics.push_back("degree " + std::to_string(d) +
                                " Taylor part vanishes; dropped from the basis");
      continue;
    }
    std::vector<Complex> v(grid.size());
    std::vector<double> x(static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.node(i, x);
      v[i] = part(x);
    }
    const double original = std::sqrt(inner(w, v, v).real());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : kept) {
        const Complex c = inner(w, b, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
    }
    const double norm = std::sqrt(inner(w, v, v).real());
    if (!(norm > 1e-10 * original)) {
      out.diagnostics.push_back("degree " + std::to_string(d) +
                                " part is dependent on lower degrees on O; dropped");
      continue;
    }
    for (auto& c : v) c /= norm;
    kept.push_back(std::move(v));
    out.degrees.push_back(d);
  }
  for (auto& v : kept) out.functions.emplace_back(grid, std::move(v));
  return out;
}

double singular_fraction(const CondensateBasis& basis, const SampledWaveFunction& f) {
  if (basis.functions.empty()) return 0.0;
  if (!same_grid(basis.functions.front().grid(), f.grid())) {
    throw ValidationError("singular_fraction: f must be sampled on the basis grid");
  }
  if (f.l2norm() == 0.0) return 0.0;
  const auto& w = f.grid().weights();
  double sum = 0.0;
  for (const auto& b : basis.functions) sum += std::norm(inner(w, b.values(), f.values()));
  return std::sqrt(sum) / f.l2norm();
}

}  // namespace gslab
