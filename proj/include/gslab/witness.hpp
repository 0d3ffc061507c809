#pragma once

// Constructive almost-macroscopic occupation: a fixed f = sum_k c_k f_{n_k}
// over orthonormal rotating condensate modes f_{n_k}, with a subsequence n_k
// along which (chi(n_k) / n_k) * occupation diverges.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace gslab {

using BigInt = boost::multiprecision::cpp_int;

enum class ChiFunction { Log, LogLog, Identity };

ChiFunction parse_chi(const std::string& name);
std::string chi_name(ChiFunction chi);

/// chi(n) for arbitrary-precision n; Identity is capped at DBL_MAX.
double evaluate_chi(ChiFunction chi, const BigInt& n);

enum class ScheduleKind {
  /// n_k = 2^(k^3).
  PowerOfCube,
  /// Smallest power of two with chi(n_k) >= k^3.
  Auto,
  /// Caller-supplied strictly increasing n_k.
  Explicit,
};

struct WitnessSpec {
  ChiFunction chi = ChiFunction::Log;
  double delta = 0.5;
  int k_max = 12;
  ScheduleKind schedule = ScheduleKind::PowerOfCube;
  std::vector<BigInt> explicit_schedule;
  /// Nonzero: c_k = 0 for k > support (renormalized), the negative control.
  int support = 0;
  /// Largest exponent b allowed for n_k = 2^b under the Auto schedule.
  std::uint64_t max_bits = 1u << 20;
};

struct WitnessRow {
  int k = 0;
  BigInt n_k;
  double chi = 0.0;
  /// |c_k|^2
  double weight = 0.0;
  /// delta |c_k|^2 chi(n_k)
  double lower_bound = 0.0;
  bool meets_cube_target = false;
};

struct WitnessResult {
  /// |c_k|^2 for k = 1..k_max.
  std::vector<double> coefficients;
  std::vector<WitnessRow> rows;
  /// Lower-bound column strictly increasing over the table.
  bool strictly_increasing = false;
};

WitnessResult almost_macroscopic_witness(const WitnessSpec& spec);

}  // namespace gslab
