#include "gslab/focksim.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gslab/error.hpp"
#include "gslab/exactform.hpp"
#include "gslab/numeric.hpp"

namespace gslab {

namespace {

double binomial_dimension(int modes, int max_particles) {
  // C(N + m, m) in floating point, only for the cap check.
  double d = 1.0;
  for (int i = 1; i <= modes; ++i) d = d * (max_particles + i) / i;
  return d;
}

void compositions(int total, int modes, std::vector<std::vector<int>>& out) {
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  auto rec = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == modes - 1) {
      occ[static_cast<std::size_t>(axis)] = remaining;
      out.push_back(occ);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      occ[static_cast<std::size_t>(axis)] = v;
      self(self, axis + 1, remaining - v);
    }
  };
  rec(rec, 0, total);
}

// Map from occupation tuple to basis index, shared lookups during the build.
std::map<std::vector<int>, std::size_t> index_map(const TruncatedFock& space) {
  std::map<std::vector<int>, std::size_t> m;
  for (std::size_t i = 0; i < space.dimension(); ++i) m.emplace(space.basis()[i], i);
  return m;
}

double largest_singular_value(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

}  // namespace

TruncatedFock::TruncatedFock(int modes, int max_particles)
    : modes_(modes), max_particles_(max_particles) {
  if (modes < 1) throw ValidationError("TruncatedFock: need at least one mode");
  if (max_particles < 0) throw ValidationError("TruncatedFock: occupation cap must be >= 0");
  if (binomial_dimension(modes, max_particles) > static_cast<double>(kMaxFockDimension)) {
    std::ostringstream os;
    os << "TruncatedFock: dimension C(" << max_particles + modes << ", " << modes
       << ") exceeds the cap " << kMaxFockDimension;
    throw ValidationError(os.str());
  }
  for (int t = 0; t <= max_particles; ++t) {
    const std::size_t before = basis_.size();
    compositions(t, modes, basis_);
    totals_.insert(totals_.end(), basis_.size() - before, t);
  }
}

std::size_t TruncatedFock::index_of(const std::vector<int>& occupation) const {
  if (occupation.size() != static_cast<std::size_t>(modes_)) {
    throw ValidationError("TruncatedFock::index_of: wrong number of modes");
  }
  int total = 0;
  for (int k : occupation) {
    if (k < 0) throw ValidationError("TruncatedFock::index_of: negative occupation");
    total += k;
  }
  if (total > max_particles_) throw ValidationError("TruncatedFock::index_of: above occupation cap");
  // Basis is sorted by total, then descending lexicographic within a total.
  const auto first = std::lower_bound(totals_.begin(), totals_.end(), total) - totals_.begin();
  const auto last = std::upper_bound(totals_.begin(), totals_.end(), total) - totals_.begin();
  const auto it = std::lower_bound(basis_.begin() + first, basis_.begin() + last, occupation,
                                   [](const std::vector<int>& a, const std::vector<int>& b) {
                                     return a > b;
                                   });
  return static_cast<std::size_t>(it - basis_.begin());
}

FockOperators::FockOperators(const TruncatedFock& space) : space_(space) {
  const std::size_t d = space.dimension();
  if (d > kMaxDenseDimension) {
    std::ostringstream os;
    os << "build_operators: dimension " << d << " exceeds the dense cap " << kMaxDenseDimension;
    throw ValidationError(os.str());
  }
  const auto lookup = index_map(space);
  for (int i = 0; i < space.modes(); ++i) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t src = 0; src < d; ++src) {
      std::vector<int> occ = space.basis()[src];
      const int k = occ[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      occ[static_cast<std::size_t>(i)] = k - 1;
      const std::size_t dst = lookup.at(occ);
      a(static_cast<Eigen::Index>(dst), static_cast<Eigen::Index>(src)) = std::sqrt(static_cast<double>(k));
    }
    a_dag_.push_back(a.adjoint());
    a_.push_back(std::move(a));
  }
}

void FockOperators::check_mode(const ModeVector& v) const {
  if (v.size() != space_.modes()) throw ValidationError("mode vector length differs from mode count");
  if (!v.allFinite()) throw ValidationError("mode vector has non-finite coefficients");
}

Eigen::MatrixXcd FockOperators::annihilation(const ModeVector& g) const {
  check_mode(g);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a_[0].rows(), a_[0].cols());
  for (int i = 0; i < space_.modes(); ++i) m += std::conj(g(i)) * a_[static_cast<std::size_t>(i)];
  return m;
}

Eigen::MatrixXcd FockOperators::creation(const ModeVector& g) const {
  check_mode(g);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a_[0].rows(), a_[0].cols());
  for (int i = 0; i < space_.modes(); ++i) m += g(i) * a_dag_[static_cast<std::size_t>(i)];
  return m;
}

Eigen::MatrixXcd FockOperators::field(const ModeVector& g) const {
  return (creation(g) + annihilation(g)) / std::sqrt(2.0);
}

Eigen::MatrixXcd FockOperators::number(const ModeVector& f) const {
  return creation(f) * annihilation(f);
}

Eigen::MatrixXcd FockOperators::a_eps(const ModeVector& f, double eps, double mu) const {
  if (!(eps >= 0.0) || !(mu > 0.0)) throw ValidationError("a_eps: need eps >= 0 and mu > 0");
  const Eigen::MatrixXcd m =
      mu * Eigen::MatrixXcd::Identity(a_[0].rows(), a_[0].cols()) + eps * number(f);
  return m.ldlt().solve(Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
}

Eigen::MatrixXcd FockOperators::field_resolvent(double lambda, const ModeVector& g) const {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw ValidationError("field_resolvent: lambda must be nonzero");
  const Eigen::MatrixXcd m =
      std::complex<double>(0.0, lambda) * Eigen::MatrixXcd::Identity(a_[0].rows(), a_[0].cols()) + field(g);
  return m.partialPivLu().inverse();
}

Eigen::MatrixXcd FockOperators::projector_columns(int count) const {
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < space_.dimension(); ++i) {
    if (space_.particle_number(i) <= count) keep.push_back(static_cast<Eigen::Index>(i));
  }
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(space_.dimension()),
                                              static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) p(keep[c], static_cast<Eigen::Index>(c)) = 1.0;
  return p;
}

Eigen::VectorXcd FockOperators::condensate_state(const ModeVector& g, int n) const {
  return split_state(g, n, ModeVector::Zero(space_.modes()), 0);
}

Eigen::VectorXcd FockOperators::split_state(const ModeVector& g1, int k, const ModeVector& g2,
                                            int n_minus_k) const {
  if (k < 0 || n_minus_k < 0) throw ValidationError("split_state: occupations must be >= 0");
  if (k + n_minus_k > space_.max_particles()) {
    throw ValidationError("state particle number exceeds the occupation cap");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space_.dimension()));
  v(0) = 1.0;
  if (n_minus_k > 0) {
    const Eigen::MatrixXcd c2 = creation(g2);
    for (int j = 1; j <= n_minus_k; ++j) v = c2 * v / std::sqrt(static_cast<double>(j));
  }
  if (k > 0) {
    const Eigen::MatrixXcd c1 = creation(g1);
    for (int j = 1; j <= k; ++j) v = c1 * v / std::sqrt(static_cast<double>(j));
  }
  return v;
}

FockOperators build_operators(const TruncatedFock& space) { return FockOperators(space); }

double brute_resolvent(const TruncatedFock& space, const ModeVector& g_mode,
                       const ModeVector& f_mode, int n, double mu) {
  if (n < 0 || n > space.max_particles()) throw ValidationError("brute_resolvent: need 0 <= n <= N_max");
  if (!(mu > 0.0)) throw ValidationError("brute_resolvent: mu must be positive");
  const FockOperators ops(space);
  const Eigen::VectorXcd omega = ops.condensate_state(g_mode, n);
  const Eigen::MatrixXcd m =
      mu * Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(space.dimension()),
                                      static_cast<Eigen::Index>(space.dimension())) +
      ops.number(f_mode);
  const Eigen::VectorXcd x = m.ldlt().solve(omega);
  return omega.dot(x).real();
}

CommutatorCheck commutator_bound_check(const FockOperators& ops, CommutatorKind kind, double lambda,
                                       const ModeVector& g_mode, const ModeVector& f_mode,
                                       double eps, int buffer) {
  if (!(eps > 0.0)) throw ValidationError("commutator_bound_check: eps must be positive");
  const int n_max = ops.space().max_particles();
  if (buffer < 0 || buffer >= n_max) {
    throw ValidationError("commutator_bound_check: buffer must satisfy 0 <= B < N_max");
  }
  if (std::abs(f_mode.norm() - 1.0) > 1e-12) {
    throw ValidationError("commutator_bound_check: f must be normalized");
  }
  const Eigen::MatrixXcd a = ops.a_eps(f_mode, eps);
  Eigen::MatrixXcd x;
  CommutatorCheck out;
  if (kind == CommutatorKind::Field) {
    x = ops.field(f_mode);
    out.bound = std::sqrt(2.0 * eps);
  } else {
    x = ops.field_resolvent(lambda, g_mode);
    out.bound = std::sqrt(2.0 * eps) * g_mode.norm() / (lambda * lambda);
  }
  const Eigen::MatrixXcd c = x * a - a * x;
  out.observed = largest_singular_value(c * ops.projector_columns(n_max - buffer));
  out.margin_ok = out.observed <= out.bound * (1.0 + 1e-6);
  return out;
}

ScoreReport proper_condensate_score(const std::function<double(double)>& expectation,
                                    const std::vector<double>& mu_list) {
  if (mu_list.size() < 2) throw ValidationError("proper_condensate_score: need >= 2 mu values");
  for (std::size_t i = 0; i < mu_list.size(); ++i) {
    if (!(mu_list[i] > 0.0) || (i > 0 && !(mu_list[i] > mu_list[i - 1]))) {
      throw ValidationError("proper_condensate_score: mu list must be positive and increasing");
    }
  }
  if (mu_list.back() / mu_list.front() < 1e3 * (1.0 - 1e-12)) {
    throw ValidationError("proper_condensate_score: mu list must span 3 decades");
  }
  ScoreReport out;
  for (double mu : mu_list) {
    out.mu.push_back(mu);
    out.score.push_back(mu * expectation(mu));
  }
  out.tail = out.score.back();
  out.regular = std::abs(1.0 - out.tail) <= 1e-2;
  return out;
}

std::function<double(double)> binomial_state_expectation(std::uint64_t n, double p) {
  return [n, p](double mu) { return resolvent_expectation({n, p, mu}); };
}

std::function<double(double)> matrix_state_expectation(const FockOperators& ops,
                                                       const Eigen::VectorXcd& state,
                                                       const ModeVector& f_mode) {
  const Eigen::MatrixXcd number = ops.number(f_mode);
  return [number, state](double mu) {
    const Eigen::MatrixXcd m =
        mu * Eigen::MatrixXcd::Identity(number.rows(), number.cols()) + number;
    return state.dot(m.ldlt().solve(state)).real();
  };
}

OnePdm one_pdm(const FockOperators& ops, const Eigen::VectorXcd& state) {
  const int m = ops.space().modes();
  if (state.size() != static_cast<Eigen::Index>(ops.space().dimension())) {
    throw ValidationError("one_pdm: state length differs from the space dimension");
  }
  std::vector<Eigen::VectorXcd> lowered;
  for (int i = 0; i < m; ++i) lowered.push_back(ops.a(i) * state);
  OnePdm out;
  out.matrix.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.matrix(i, j) = lowered[static_cast<std::size_t>(j)].dot(lowered[static_cast<std::size_t>(i)]);
    }
  }
  const double scale = 1.0 + out.matrix.norm();
  if ((out.matrix - out.matrix.adjoint()).norm() > 1e-12 * scale) {
    throw NumericalError("one_pdm: density matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.matrix, Eigen::EigenvaluesOnly);
  out.eigenvalues = eig.eigenvalues();
  if (out.eigenvalues.size() > 0 && out.eigenvalues(0) < -1e-10) {
    throw NumericalError("one_pdm: density matrix has a negative eigenvalue");
  }
  out.trace = out.matrix.trace().real();
  return out;
}

GrowingCondensateReport growing_condensate_margin(const std::vector<OccupationSample>& sequence,
                                                  double fixed_p, const std::vector<double>& eps_list) {
  if (sequence.empty()) throw ValidationError("growing_condensate_margin: empty sequence");
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto& s = sequence[i];
    if (s.n == 0 || (i > 0 && s.n <= sequence[i - 1].n)) {
      throw ValidationError("growing_condensate_margin: n must be positive and increasing");
    }
    if (!(s.occupation >= 0.0) || s.occupation > static_cast<double>(s.n) * (1.0 + 1e-12)) {
      throw ValidationError("growing_condensate_margin: occupation must lie in [0, n]");
    }
  }
  if (!(fixed_p >= 0.0 && fixed_p <= 1.0)) {
    throw ValidationError("growing_condensate_margin: p must lie in [0, 1]");
  }
  const std::size_t start = sequence.size() / 2;
  std::vector<double> lx;
  std::vector<double> ly;
  GrowingCondensateReport out;
  bool positive = true;
  for (std::size_t i = start; i < sequence.size(); ++i) {
    const double r = sequence[i].occupation / static_cast<double>(sequence[i].n);
    out.delta_hat = std::max(out.delta_hat, r);
    positive = positive && r > 0.0;
    if (r > 0.0) {
      lx.push_back(std::log(static_cast<double>(sequence[i].n)));
      ly.push_back(std::log(r));
    }
  }
  if (positive && lx.size() >= 3 && fit_line(lx, ly).slope < -0.05) out.delta_hat = 0.0;

  const double delta = out.delta_hat;
  if (fixed_p == 0.0 || delta == 0.0) return out;
  for (const auto& s : sequence) {
    const double m = std::floor(delta * static_cast<double>(s.n) / 2.0);
    const auto threshold = static_cast<std::uint64_t>(m);
    const double tail = binomial_expectation(
        s.n, fixed_p, [threshold](std::uint64_t k) { return k >= threshold ? 1.0 : 0.0; });
    for (double eps : eps_list) {
      if (!(eps > 0.0)) throw ValidationError("growing_condensate_margin: eps must be positive");
      ChainRow row;
      row.n = s.n;
      row.eps = eps;
      row.d_eps = binomial_expectation(s.n, fixed_p, [eps](std::uint64_t k) {
        const double ek = eps * static_cast<double>(k);
        return ek / (1.0 + ek);
      });
      row.d_eps_bound = delta * eps * m / (2.0 * (1.0 + eps * m));
      row.tail_mass = tail;
      row.ok = row.d_eps >= row.d_eps_bound * (1.0 - 1e-12) && tail >= delta / 2.0 - 1e-12 &&
               (s.n < 1000 || row.d_eps >= delta / 2.0 - 1e-12);
      out.chain_ok = out.chain_ok && row.ok;
      out.chain.push_back(row);
    }
  }
  return out;
}

FixedBasisResult best_fixed_basis_occupation(const std::vector<ModeVector>& condensate_modes,
                                             double delta) {
  if (condensate_modes.empty()) throw ValidationError("best_fixed_basis_occupation: no modes");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw ValidationError("best_fixed_basis_occupation: delta must lie in (0, 1]");
  }
  const Eigen::Index d = condensate_modes.front().size();
  std::vector<double> best(static_cast<std::size_t>(d), 0.0);
  for (std::size_t t = condensate_modes.size() / 2; t < condensate_modes.size(); ++t) {
    const auto& u = condensate_modes[t];
    if (u.size() != d) throw ValidationError("best_fixed_basis_occupation: mode sizes differ");
    const double norm2 = u.squaredNorm();
    if (!(norm2 > 0.0)) throw ValidationError("best_fixed_basis_occupation: zero mode");
    for (Eigen::Index i = 0; i < d; ++i) {
      best[static_cast<std::size_t>(i)] =
          std::max(best[static_cast<std::size_t>(i)], delta * std::norm(u(i)) / norm2);
    }
  }
  FixedBasisResult out;
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i] > out.fraction) {
      out.fraction = best[i];
      out.best_index = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace gslab
