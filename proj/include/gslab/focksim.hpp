#pragma once

// Truncated bosonic Fock space over m abstract orthonormal modes with at most
// N_max particles, dense operator matrices, and brute-force checks of the
// resolvent formula, commutator bounds and condensate criteria.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace gslab {

using ModeVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxFockDimension = 200'000;
/// Largest dimension for which dense operator matrices are built.
inline constexpr std::size_t kMaxDenseDimension = 1024;

class TruncatedFock {
 public:
  TruncatedFock(int modes, int max_particles);

  int modes() const { return modes_; }
  int max_particles() const { return max_particles_; }
  std::size_t dimension() const { return basis_.size(); }
  /// Occupation tuples ordered by total particle number, then descending lexicographic.
  const std::vector<std::vector<int>>& basis() const { return basis_; }
  int particle_number(std::size_t i) const { return totals_[i]; }
  /// Index of an occupation tuple; throws ValidationError when absent.
  std::size_t index_of(const std::vector<int>& occupation) const;

 private:
  int modes_;
  int max_particles_;
  std::vector<std::vector<int>> basis_;
  std::vector<int> totals_;
};

class FockOperators {
 public:
  explicit FockOperators(const TruncatedFock& space);

  const TruncatedFock& space() const { return space_; }
  const Eigen::MatrixXcd& a(int i) const { return a_[static_cast<std::size_t>(i)]; }
  const Eigen::MatrixXcd& a_dag(int i) const { return a_dag_[static_cast<std::size_t>(i)]; }

  /// a(g) = sum_i conj(g_i) a_i.
  Eigen::MatrixXcd annihilation(const ModeVector& g) const;
  /// a*(g) = sum_i g_i a*_i (truncated at N_max).
  Eigen::MatrixXcd creation(const ModeVector& g) const;
  /// phi(g) = 2^(-1/2) (a*(g) + a(g)).
  Eigen::MatrixXcd field(const ModeVector& g) const;
  /// a*(f) a(f).
  Eigen::MatrixXcd number(const ModeVector& f) const;
  /// (mu + eps a*(f) a(f))^(-1); A_eps is the case mu = 1.
  Eigen::MatrixXcd a_eps(const ModeVector& f, double eps, double mu = 1.0) const;
  /// R(lambda, g) = (i lambda + phi(g))^(-1).
  Eigen::MatrixXcd field_resolvent(double lambda, const ModeVector& g) const;
  /// Columns spanning the states with at most `count` particles.
  Eigen::MatrixXcd projector_columns(int count) const;

  /// (n!)^(-1/2) a*(g)^n Omega_0.
  Eigen::VectorXcd condensate_state(const ModeVector& g, int n) const;
  /// Product state with k particles in g1 and n - k in g2 (orthonormal modes).
  Eigen::VectorXcd split_state(const ModeVector& g1, int k, const ModeVector& g2, int n_minus_k) const;

 private:
  void check_mode(const ModeVector& v) const;

  TruncatedFock space_;
  std::vector<Eigen::MatrixXcd> a_;
  std::vector<Eigen::MatrixXcd> a_dag_;
};

/// Rejects spaces above the dense cap and builds the matrices.
FockOperators build_operators(const TruncatedFock& space);

/// <Omega_n, (mu + a*(f) a(f))^(-1) Omega_n> with Omega_n the n-particle
/// condensate in g, by direct linear solve.
double brute_resolvent(const TruncatedFock& space, const ModeVector& g_mode,
                       const ModeVector& f_mode, int n, double mu);

enum class CommutatorKind { Field, Resolvent };

struct CommutatorCheck {
  double observed = 0.0;
  double bound = 0.0;
  bool margin_ok = false;
};

/// Largest singular value of [X, A_eps] restricted to states with at most
/// N_max - buffer particles, where X is phi(f) (bound sqrt(2 eps) ||f||) or
/// R(lambda, g) (bound sqrt(2 eps) lambda^-2 ||g||). A_eps is built from f.
CommutatorCheck commutator_bound_check(const FockOperators& ops, CommutatorKind kind, double lambda,
                                       const ModeVector& g_mode, const ModeVector& f_mode,
                                       double eps, int buffer);

struct ScoreReport {
  std::vector<double> mu;
  std::vector<double> score;
  /// Score at the largest mu.
  double tail = 0.0;
  /// |1 - tail| <= 1e-2.
  bool regular = false;
};

/// mu * omega(R_f(mu)) along an increasing mu list spanning >= 3 decades.
/// `expectation` returns omega((mu + a*(f) a(f))^(-1)).
ScoreReport proper_condensate_score(const std::function<double(double)>& expectation,
                                    const std::vector<double>& mu_list);

/// Expectation provider for Omega_n with transition probability p (closed form).
std::function<double(double)> binomial_state_expectation(std::uint64_t n, double p);
/// Expectation provider for an explicit state vector by linear solve.
std::function<double(double)> matrix_state_expectation(const FockOperators& ops,
                                                       const Eigen::VectorXcd& state,
                                                       const ModeVector& f_mode);

struct OnePdm {
  /// rho(i, j) = omega(a*_j a_i).
  Eigen::MatrixXcd matrix;
  /// Ascending.
  Eigen::VectorXd eigenvalues;
  double trace = 0.0;
};

/// One-particle density matrix of a state vector; checks Hermiticity and
/// positivity (NumericalError below -1e-10).
OnePdm one_pdm(const FockOperators& ops, const Eigen::VectorXcd& state);

struct OccupationSample {
  std::uint64_t n = 0;
  double occupation = 0.0;
};

struct ChainRow {
  std::uint64_t n = 0;
  double eps = 0.0;
  /// omega_n(1 - A_eps).
  double d_eps = 0.0;
  /// delta eps m / (2 (1 + eps m)), m = floor(delta n / 2).
  double d_eps_bound = 0.0;
  /// Probability of at least m particles in f.
  double tail_mass = 0.0;
  bool ok = false;
};

struct GrowingCondensateReport {
  double delta_hat = 0.0;
  std::vector<ChainRow> chain;
  bool chain_ok = true;
};

/// delta_hat = limsup estimate of occupation / n over the last half of the
/// sequence (0 when the tail ratios decay as a power of n). With fixed_p > 0
/// the states are taken to be Omega_n with transition probability p and the
/// lower-bound chain is evaluated for every (n, eps).
GrowingCondensateReport growing_condensate_margin(const std::vector<OccupationSample>& sequence,
                                                  double fixed_p, const std::vector<double>& eps_list);

struct FixedBasisResult {
  int best_index = -1;
  /// limsup over the tail of occupation / n for the best basis vector.
  double fraction = 0.0;
};

/// Condensate of fraction delta in the unit modes u_n of a d-dimensional
/// space (coefficients in a fixed orthonormal basis); occupation of basis
/// vector e_i is delta n |u_{n,i}|^2. Returns the best e_i.
FixedBasisResult best_fixed_basis_occupation(const std::vector<ModeVector>& condensate_modes,
                                             double delta);

}  // namespace gslab
