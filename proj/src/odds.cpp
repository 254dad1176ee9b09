#include "equical/odds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "equical/equipoise.hpp"

namespace equical {

namespace {

void check_oc(const OperatingCharacteristics& oc) {
    if (!(oc.alpha > 0.0 && oc.alpha < 1.0))
        throw std::domain_error("OperatingCharacteristics: alpha must lie in (0,1)");
    if (!(oc.power > 0.0 && oc.power <= 1.0))
        throw std::domain_error("OperatingCharacteristics: power must lie in (0,1]");
}

void check_prior(double prior_odds) {
    if (!(prior_odds > 0.0))
        throw std::domain_error("prior odds must be positive");
}

}  // namespace

PostStudyOdds post_odds_positive(const OperatingCharacteristics& oc, double prior_odds) {
    check_oc(oc);
    check_prior(prior_odds);
    return {prior_odds * oc.power / oc.alpha, Hypothesis::h1, Outcome::positive};
}

PostStudyOdds post_odds_negative(const OperatingCharacteristics& oc, double prior_odds) {
    check_oc(oc);
    check_prior(prior_odds);
    double value = oc.power < 1.0
                       ? (1.0 / prior_odds) * (1.0 - oc.alpha) / (1.0 - oc.power)
                       : std::numeric_limits<double>::infinity();
    return {value, Hypothesis::h0, Outcome::negative};
}

CdpOddsReport cdp_odds(const OperatingCharacteristics& phase2,
                       const std::vector<double>& phase3_pos_lr,
                       double phase3_neg_lr, double prior_odds_joint) {
    check_oc(phase2);
    check_prior(prior_odds_joint);
    if (phase3_pos_lr.empty())
        throw std::domain_error("cdp_odds: need at least one phase 3 positive LR");
    for (double lr : phase3_pos_lr)
        if (!(lr > 0.0)) throw std::domain_error("cdp_odds: positive LRs must be > 0");
    if (!(phase3_neg_lr > 0.0))
        throw std::domain_error("cdp_odds: negative LR must be > 0");
    if (phase2.power >= 1.0 || phase2.alpha >= 1.0)
        throw std::domain_error("cdp_odds: degenerate phase 2 stage probability");

    double a2 = phase2.alpha;
    double p2 = phase2.power;

    CdpOddsReport report;
    for (double lr3 : phase3_pos_lr)
        report.r10_pp.push_back({prior_odds_joint * (p2 / a2) * lr3, Hypothesis::h1,
                                 Outcome::pos_pos});
    report.r01_pn = {(1.0 / prior_odds_joint) * (a2 / p2) * phase3_neg_lr,
                     Hypothesis::h0, Outcome::pos_neg};
    for (double lr3 : phase3_pos_lr)
        report.r10_np.push_back({prior_odds_joint * ((1.0 - p2) / (1.0 - a2)) * lr3,
                                 Hypothesis::h1, Outcome::neg_pos});
    report.r01_nn = {(1.0 / prior_odds_joint) * ((1.0 - a2) / (1.0 - p2)) * phase3_neg_lr,
                     Hypothesis::h0, Outcome::neg_neg};
    return report;
}

std::vector<Table1Row> table1() {
    const OperatingCharacteristics rows[] = {
        {0.10, 0.90}, {0.05, 0.90}, {0.05, 0.95}, {0.01, 0.99}};
    std::vector<Table1Row> out;
    for (const auto& oc : rows) {
        double odds = post_odds_positive(oc).value;
        out.push_back({oc.alpha, oc.power, odds, odds_cdf(bp11(), odds)});
    }
    return out;
}

}  // namespace equical
