#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equical/calibration.hpp"
#include "equical/gs_design.hpp"
#include "equical/odds.hpp"

namespace equical {

// Reference tables shipped with the library. Table 1 lives in odds.hpp; the
// builders here assemble the group-sequential table, the joint-equipoise
// percentile table, the CDP comparison table and the equipoise CDF curves.

struct Table2Row {
    double power;
    std::int64_t n_total;
    double n_pct;
    double hr_cv_ia;
    double hr_cv_fa;
    double r10_ia;
    double r10_fa;
    double r01_fa;
};

std::vector<Table2Row> table2();

struct Table3Row {
    double percentile;
    double odds_threshold;
};

std::vector<Table3Row> table3();

struct Table4Row {
    std::string name;
    std::int64_t total_n;
    std::int64_t ph3_n;
    double ph2_alpha;
    double ph2_power;
    std::int64_t ph2_n_per_arm;
    double ph3_fwer;
    double ph3_power;
    double ph2_diff_cv;
    double hr_cv_ia;
    double hr_cv_fa;
    CdpOddsReport odds;
};

std::vector<Table4Row> table4();

std::vector<CdpCandidate> table4_candidates();

std::vector<double> figure1_grid();

std::string table1_csv();
std::string table2_csv();
std::string table3_csv();
std::string table4_csv();
std::string figure1_csv();

}  // namespace equical
