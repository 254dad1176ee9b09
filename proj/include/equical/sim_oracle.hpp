#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equical/equipoise.hpp"
#include "equical/gs_design.hpp"
#include "equical/prop_design.hpp"

namespace equical {

struct SimulationReport {
    std::int64_t replicates;
    std::uint64_t seed;
    std::vector<std::string> names;
    std::vector<double> estimates;
    std::vector<double> standard_errors;

    std::string to_csv() const;
};

// Worker count for the simulators: EQUICAL_THREADS when set, otherwise the
// hardware count. Results are byte-identical for any worker count because
// every replicate owns the stream keyed by its index.
int simulation_thread_count();

// Patient-level oracle for the group-sequential engine: exponential event
// times (control hazard ln2/soc_median, treatment scaled by true_hr), uniform
// accrual, analyses triggered when the k-th design event count is reached,
// standardized log-rank against the design z-boundaries.
SimulationReport simulate_gs_tte(const GroupSequentialDesign& design, double true_hr,
                                 const AccrualModel& acc, std::int64_t replicates,
                                 std::uint64_t seed, int threads = 0);

// Binomial oracle for the phase 2 test at the design's fixed critical
// difference.
SimulationReport simulate_two_prop(const TwoProportionDesign& design,
                                   double true_p_soc, double true_p_inv,
                                   std::int64_t replicates, std::uint64_t seed,
                                   int threads = 0);

// Sampling cross-check of the product-odds quantile.
QuantileEstimate mc_product_quantile(const JointEquipoiseModel& j, double p,
                                     std::int64_t samples, std::uint64_t seed);

}  // namespace equical
