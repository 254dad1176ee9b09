#pragma once

#include <vector>

namespace equical {

// False positive rate and power of one trial outcome.
struct OperatingCharacteristics {
    double alpha;  // p(+|H0)
    double power;  // p(+|H1)

    // A positive outcome only carries evidence for H1 when power > alpha.
    bool informative() const { return power > alpha; }
};

enum class Hypothesis { h0, h1 };

enum class Outcome {
    positive,
    negative,
    pos_pos,  // (+2, +3)
    pos_neg,  // (+2, -3)
    neg_pos,  // (-2, +3)
    neg_neg,  // (-2, -3)
};

struct PostStudyOdds {
    double value;
    Hypothesis favors;
    Outcome outcome;
};

// Post-study odds of H1 after a positive outcome: prior * power/alpha.
PostStudyOdds post_odds_positive(const OperatingCharacteristics& oc,
                                 double prior_odds = 1.0);

// Post-study odds of H0 after a negative outcome:
// (1/prior) * (1-alpha)/(1-power). Infinite (flagged by the value) at power 1.
PostStudyOdds post_odds_negative(const OperatingCharacteristics& oc,
                                 double prior_odds = 1.0);

// Odds of the four outcomes of a phase 2 + phase 3 plan. Phase 3 enters as
// ready-made likelihood ratios (one positive LR per analysis, one overall
// negative LR), so any group-sequential convention upstream is respected.
struct CdpOddsReport {
    std::vector<PostStudyOdds> r10_pp;  // one per phase 3 analysis
    PostStudyOdds r01_pn;
    std::vector<PostStudyOdds> r10_np;  // one per phase 3 analysis
    PostStudyOdds r01_nn;
};

CdpOddsReport cdp_odds(const OperatingCharacteristics& phase2,
                       const std::vector<double>& phase3_pos_lr,
                       double phase3_neg_lr, double prior_odds_joint = 1.0);

struct Table1Row {
    double alpha;
    double power;
    double odds;
    double percentile;
};

// The four reference rows: positive post-study odds under perfect equipoise
// and their BP(1,1) percentile.
std::vector<Table1Row> table1();

}  // namespace equical
