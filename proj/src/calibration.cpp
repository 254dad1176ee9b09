#include "equical/calibration.hpp"

#include <stdexcept>

namespace equical {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("calibration: alpha must lie in (0,1)");
}

}  // namespace

PowerRequirement required_power(double alpha, const CalibrationTarget& target) {
    check_alpha(alpha);
    double q = odds_quantile(target.model, target.percentile);
    double power = alpha * q;
    if (power > 1.0) return {std::nullopt, 1.0 / q};
    return {power, 1.0 / q};
}

PowerRequirement required_negative_power(double alpha, const CalibrationTarget& target) {
    check_alpha(alpha);
    double q = odds_quantile(target.model, target.percentile);
    double power = 1.0 - (1.0 - alpha) / q;
    if (power >= 1.0) return {std::nullopt, 1.0 / q};
    if (power < 0.0) power = 0.0;  // already satisfied by any power
    return {power, 1.0 / q};
}

double max_alpha(const CalibrationTarget& target, double power_cap) {
    if (!(power_cap > 0.0 && power_cap <= 1.0))
        throw std::domain_error("max_alpha: power cap must lie in (0,1]");
    return power_cap / odds_quantile(target.model, target.percentile);
}

std::optional<CdpCandidate> cdp_search(const std::vector<CdpCandidate>& candidates,
                                       double joint_threshold) {
    std::optional<CdpCandidate> best;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const CdpCandidate& cand = candidates[i];
        if (cand.odds.r10_pp.empty())
            throw std::domain_error("cdp_search: candidate without phase 3 odds");
        double r10_fa = cand.odds.r10_pp.back().value;  // FA is the conservative one
        double r01 = cand.odds.r01_nn.value;
        if (r10_fa < joint_threshold || r01 < joint_threshold) continue;
        bool better = !best ||
                      cand.total_n < best->total_n ||
                      (cand.total_n == best->total_n &&
                       (r01 > best->odds.r01_nn.value ||
                        (r01 == best->odds.r01_nn.value && i < best_index)));
        if (better) {
            best = cand;
            best_index = i;
        }
    }
    return best;
}

}  // namespace equical
