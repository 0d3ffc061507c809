#pragma once

// Row-parallel batches over parameter grids. Each batch has a serial twin
// that runs the same per-row code in order; outputs are identical bit for bit
// because rows never share accumulators. An exception thrown by any row is
// rethrown for the lowest failing index.

#include <span>
#include <vector>

#include "gslab/exactform.hpp"
#include "gslab/groundstate.hpp"

namespace gslab {

std::vector<double> resolvent_batch(std::span<const ResolventQuery> queries);
std::vector<double> resolvent_batch_serial(std::span<const ResolventQuery> queries);

std::vector<LimitValues> poisson_batch(std::span<const LimitQuery> queries);
std::vector<LimitValues> poisson_batch_serial(std::span<const LimitQuery> queries);

std::vector<OverlapEstimate> overlap_sweep(const GroundStateModel& g, const SampledWaveFunction& f,
                                           std::span<const double> lambdas);
std::vector<OverlapEstimate> overlap_sweep_serial(const GroundStateModel& g,
                                                  const SampledWaveFunction& f,
                                                  std::span<const double> lambdas);

/// number_expectations for paired (n_i, lambda_i).
std::vector<NumberExpectations> number_sweep(const GroundStateModel& g, const RegionSpec& region,
                                             std::span<const double> ns,
                                             std::span<const double> lambdas, std::size_t points);
std::vector<NumberExpectations> number_sweep_serial(const GroundStateModel& g,
                                                    const RegionSpec& region,
                                                    std::span<const double> ns,
                                                    std::span<const double> lambdas,
                                                    std::size_t points);

}  // namespace gslab
