#include "gslab/witness.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab {

namespace {

// ln n from the bit length and the leading 53 bits.
double big_log(const BigInt& n) {
  if (n <= 0) throw ValidationError("chi: n must be positive");
  const std::uint64_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 53) return std::log(n.convert_to<double>());
  const std::uint64_t shift = bits - 53;
  const BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

double cube(int k) { return static_cast<double>(k) * k * k; }

// Smallest b with chi(2^b) >= target, or 0 when no b <= max_bits works.
std::uint64_t auto_bits(ChiFunction chi, double target, std::uint64_t max_bits) {
  double b = 0.0;
  switch (chi) {
    case ChiFunction::Log:
      b = std::ceil(target / std::numbers::ln2);
      break;
    case ChiFunction::LogLog:
      b = std::ceil(std::exp(target) / std::numbers::ln2);
      break;
    case ChiFunction::Identity:
      b = std::ceil(std::log2(target));
      break;
  }
  b = std::max(b, 2.0);
  if (!(b <= static_cast<double>(max_bits))) return 0;
  auto bits = static_cast<std::uint64_t>(b);
  // Guard against rounding in the closed-form inverse.
  while (bits > 2 && evaluate_chi(chi, BigInt(1) << (bits - 1)) >= target) --bits;
  while (evaluate_chi(chi, BigInt(1) << bits) < target) {
    if (++bits > max_bits) return 0;
  }
  return bits;
}

}  // namespace

ChiFunction parse_chi(const std::string& name) {
  if (name == "ln") return ChiFunction::Log;
  if (name == "lnln") return ChiFunction::LogLog;
  if (name == "identity") return ChiFunction::Identity;
  throw ValidationError("unknown chi function '" + name + "' (expected ln, lnln or identity)");
}

std::string chi_name(ChiFunction chi) {
  switch (chi) {
    case ChiFunction::Log:
      return "ln";
    case ChiFunction::LogLog:
      return "lnln";
    case ChiFunction::Identity:
      return "identity";
  }
  return "ln";
}

double evaluate_chi(ChiFunction chi, const BigInt& n) {
  switch (chi) {
    case ChiFunction::Log:
      return big_log(n);
    case ChiFunction::LogLog: {
      const double l = big_log(n);
      if (!(l > 0.0)) throw ValidationError("chi = lnln needs n > 1");
      return std::log(l);
    }
    case ChiFunction::Identity: {
      if (n <= 0) throw ValidationError("chi: n must be positive");
      if (boost::multiprecision::msb(n) >= 1024) return DBL_MAX;
      return std::min(n.convert_to<double>(), DBL_MAX);
    }
  }
  return 0.0;
}

WitnessResult almost_macroscopic_witness(const WitnessSpec& spec) {
  if (!(spec.delta > 0.0 && spec.delta <= 1.0)) throw ValidationError("witness: delta must lie in (0, 1]");
  if (spec.k_max < 1) throw ValidationError("witness: k_max must be >= 1");
  if (spec.support < 0) throw ValidationError("witness: support must be >= 0");
  const auto k_count = static_cast<std::size_t>(spec.k_max);

  std::vector<BigInt> schedule;
  switch (spec.schedule) {
    case ScheduleKind::PowerOfCube:
      if (cube(spec.k_max) > static_cast<double>(spec.max_bits)) {
        throw ValidationError("witness: 2^(k^3) exceeds the bit cap; lower k_max");
      }
      for (int k = 1; k <= spec.k_max; ++k) schedule.push_back(BigInt(1) << static_cast<unsigned>(k * k * k));
      break;
    case ScheduleKind::Auto:
      for (int k = 1; k <= spec.k_max; ++k) {
        const std::uint64_t bits = auto_bits(spec.chi, cube(k), spec.max_bits);
        if (bits == 0) {
          std::ostringstream os;
          os << "witness: schedule too slow, chi(n_k) >= k^3 = " << cube(k) << " needs n_k above 2^"
             << spec.max_bits << " for k = " << k << " with chi = " << chi_name(spec.chi);
          throw ValidationError(os.str());
        }
        BigInt n = BigInt(1) << static_cast<unsigned>(bits);
        if (!schedule.empty() && n <= schedule.back()) n = schedule.back() * 2;
        schedule.push_back(n);
      }
      break;
    case ScheduleKind::Explicit:
      if (spec.explicit_schedule.size() != k_count) {
        throw ValidationError("witness: explicit schedule needs exactly k_max entries");
      }
      schedule = spec.explicit_schedule;
      for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 2 || (i > 0 && schedule[i] <= schedule[i - 1])) {
          throw ValidationError("witness: schedule must be strictly increasing with n_k >= 2");
        }
      }
      break;
  }

  // |c_k|^2 = zeta(2)^-1 k^-2, or the renormalized finite-support version.
  WitnessResult out;
  double norm = 6.0 / (std::numbers::pi * std::numbers::pi);
  if (spec.support > 0) {
    double h = 0.0;
    for (int k = 1; k <= spec.support; ++k) h += 1.0 / (static_cast<double>(k) * k);
    norm = 1.0 / h;
  }
  for (int k = 1; k <= spec.k_max; ++k) {
    const bool inside = spec.support == 0 || k <= spec.support;
    out.coefficients.push_back(inside ? norm / (static_cast<double>(k) * k) : 0.0);
  }

  out.strictly_increasing = true;
  for (std::size_t i = 0; i < k_count; ++i) {
    WitnessRow row;
    row.k = static_cast<int>(i + 1);
    row.n_k = schedule[i];
    row.chi = evaluate_chi(spec.chi, row.n_k);
    row.weight = out.coefficients[i];
    row.lower_bound = spec.delta * row.weight * row.chi;
    row.meets_cube_target = row.chi >= cube(row.k);
    if (i > 0 && !(row.lower_bound > out.rows.back().lower_bound)) out.strictly_increasing = false;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace gslab
