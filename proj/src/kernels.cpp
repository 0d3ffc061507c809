#include "gslab/kernels.hpp"

#include <exception>

#include "gslab/error.hpp"

namespace gslab {

namespace {

template <class Fn>
void parallel_rows(std::size_t count, Fn&& row) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      row(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class Fn>
void serial_rows(std::size_t count, Fn&& row) {
  for (std::size_t i = 0; i < count; ++i) row(i);
}

void check_pairs(std::span<const double> ns, std::span<const double> lambdas) {
  if (ns.size() != lambdas.size()) throw ValidationError("number_sweep: n and lambda lengths differ");
}

}  // namespace

std::vector<double> resolvent_batch(std::span<const ResolventQuery> queries) {
  std::vector<double> out(queries.size());
  parallel_rows(queries.size(), [&](std::size_t i) { out[i] = resolvent_expectation(queries[i]); });
  return out;
}

std::vector<double> resolvent_batch_serial(std::span<const ResolventQuery> queries) {
  std::vector<double> out(queries.size());
  serial_rows(queries.size(), [&](std::size_t i) { out[i] = resolvent_expectation(queries[i]); });
  return out;
}

std::vector<LimitValues> poisson_batch(std::span<const LimitQuery> queries) {
  std::vector<LimitValues> out(queries.size());
  parallel_rows(queries.size(), [&](std::size_t i) { out[i] = poisson_limit(queries[i]); });
  return out;
}

std::vector<LimitValues> poisson_batch_serial(std::span<const LimitQuery> queries) {
  std::vector<LimitValues> out(queries.size());
  serial_rows(queries.size(), [&](std::size_t i) { out[i] = poisson_limit(queries[i]); });
  return out;
}

std::vector<OverlapEstimate> overlap_sweep(const GroundStateModel& g, const SampledWaveFunction& f,
                                           std::span<const double> lambdas) {
  std::vector<OverlapEstimate> out(lambdas.size());
  parallel_rows(lambdas.size(),
                [&](std::size_t i) { out[i] = scaled_overlap_estimate(g, f, lambdas[i]); });
  return out;
}

std::vector<OverlapEstimate> overlap_sweep_serial(const GroundStateModel& g,
                                                  const SampledWaveFunction& f,
                                                  std::span<const double> lambdas) {
  std::vector<OverlapEstimate> out(lambdas.size());
  serial_rows(lambdas.size(),
              [&](std::size_t i) { out[i] = scaled_overlap_estimate(g, f, lambdas[i]); });
  return out;
}

std::vector<NumberExpectations> number_sweep(const GroundStateModel& g, const RegionSpec& region,
                                             std::span<const double> ns,
                                             std::span<const double> lambdas, std::size_t points) {
  check_pairs(ns, lambdas);
  std::vector<NumberExpectations> out(ns.size());
  parallel_rows(ns.size(), [&](std::size_t i) {
    out[i] = number_expectations(g, ns[i], lambdas[i], region, points);
  });
  return out;
}

std::vector<NumberExpectations> number_sweep_serial(const GroundStateModel& g,
                                                    const RegionSpec& region,
                                                    std::span<const double> ns,
                                                    std::span<const double> lambdas,
                                                    std::size_t points) {
  check_pairs(ns, lambdas);
  std::vector<NumberExpectations> out(ns.size());
  serial_rows(ns.size(), [&](std::size_t i) {
    out[i] = number_expectations(g, ns[i], lambdas[i], region, points);
  });
  return out;
}

}  // namespace gslab
