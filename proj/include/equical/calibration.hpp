#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equical/equipoise.hpp"
#include "equical/odds.hpp"

namespace equical {

enum class Direction { positive, negative };

// Which equipoise percentile a design outcome should beat, and for which
// outcome sign.
struct CalibrationTarget {
    EquipoiseModel model;
    double percentile;
    Direction direction = Direction::positive;
};

// Infeasibility is a finding, not an error: callers branch on it.
struct PowerRequirement {
    std::optional<double> power;
    double limiting_alpha;  // largest alpha for which a solution exists

    bool feasible() const { return power.has_value(); }
};

// Power solving power/alpha = q_percentile; infeasible when that exceeds 1.
PowerRequirement required_power(double alpha, const CalibrationTarget& target);

// Power solving (1-alpha)/(1-power) = q_percentile for a negative outcome.
PowerRequirement required_negative_power(double alpha, const CalibrationTarget& target);

// Largest false positive rate compatible with the percentile at the given
// power cap: power_cap / q_percentile.
double max_alpha(const CalibrationTarget& target, double power_cap = 1.0);

struct CdpCandidate {
    std::string name;
    std::int64_t total_n;
    CdpOddsReport odds;
};

// Smallest candidate (by total N) whose final-analysis double-positive odds
// and double-negative odds both reach the joint threshold. Ties on N break
// toward larger r01_nn, then input order.
std::optional<CdpCandidate> cdp_search(const std::vector<CdpCandidate>& candidates,
                                       double joint_threshold);

}  // namespace equical
