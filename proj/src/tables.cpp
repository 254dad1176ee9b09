#include "equical/tables.hpp"

#include <cmath>

#include "equical/equipoise.hpp"
#include "equical/format.hpp"
#include "equical/prop_design.hpp"

namespace equical {

namespace {

constexpr double kHrAlt = 0.7;
constexpr double kSocMedian = 10.0;
const std::vector<double> kInfoFractions = {0.7, 1.0};

// Participant fractions with an observed event at IA / FA; event counts for
// the reference sample sizes follow from these, accrual being unstated.
constexpr double kEventFractionIa = 0.36;
constexpr double kEventFractionFa = 0.52;

GroupSequentialDesign stated_design(double power, std::int64_t n_total, double fwer) {
    std::vector<std::int64_t> events = {
        std::llround(kEventFractionIa * static_cast<double>(n_total)),
        std::llround(kEventFractionFa * static_cast<double>(n_total))};
    return design_from_events(fwer, kHrAlt, kSocMedian, n_total, kInfoFractions,
                              events, power);
}

}  // namespace

std::vector<Table2Row> table2() {
    struct Spec {
        double power;
        std::int64_t n_total;
    };
    const Spec rows[] = {{0.90, 680}, {0.95, 826}, {0.99, 1146}};

    std::vector<Table2Row> out;
    for (const Spec& spec : rows) {
        GroupSequentialDesign design = stated_design(spec.power, spec.n_total, 0.05);
        AnalysisLikelihoodRatios lr = analysis_likelihood_ratios(design);
        out.push_back({spec.power, spec.n_total,
                       100.0 * static_cast<double>(spec.n_total) / 680.0,
                       design.analyses[0].hr_critical, design.analyses[1].hr_critical,
                       lr.positive[0], lr.positive[1], lr.negative});
    }
    return out;
}

std::vector<Table3Row> table3() {
    const double percentiles[] = {0.5, 0.8, 0.85, 0.9, 0.95, 0.975, 0.99};
    JointEquipoiseModel joint{bp11(), bp11()};
    std::vector<Table3Row> out;
    for (double p : percentiles)
        out.push_back({p, product_quantile(joint, p).value});
    return out;
}

namespace {

struct CdpSpec {
    const char* name;
    std::int64_t total_n;
    std::int64_t ph3_n;
    double ph2_alpha;
    double ph2_power;
    std::int64_t ph2_n_per_arm;
    double ph3_fwer;
    double ph3_power;
};

// The reference CDP comparison set: a small/large phase 2 in front of a
// phase 3 sized for 80/90/95/99% cumulative power. Sample size columns are
// the reference ones; the odds columns are recomputed from the designs.
const CdpSpec kCdpSpecs[] = {
    {"minimal", 626, 526, 0.10, 0.80, 50, 0.05, 0.80},
    {"upfront", 718, 526, 0.05, 0.90, 96, 0.05, 0.80},
    {"base", 780, 680, 0.10, 0.80, 50, 0.05, 0.90},
    {"robust95", 926, 826, 0.10, 0.80, 50, 0.05, 0.95},
    {"robust99", 1584, 1484, 0.10, 0.80, 50, 0.01, 0.99},
};

}  // namespace

std::vector<Table4Row> table4() {
    std::vector<Table4Row> out;
    for (const CdpSpec& spec : kCdpSpecs) {
        GroupSequentialDesign ph3 = design_from_power(
            spec.ph3_fwer, kHrAlt, kSocMedian, kInfoFractions, spec.ph3_power,
            spec.ph3_n);
        AnalysisLikelihoodRatios lr = analysis_likelihood_ratios(ph3);
        CdpOddsReport odds = cdp_odds({spec.ph2_alpha, spec.ph2_power},
                                      lr.positive, lr.negative);
        out.push_back({spec.name, spec.total_n, spec.ph3_n, spec.ph2_alpha,
                       spec.ph2_power, spec.ph2_n_per_arm, spec.ph3_fwer,
                       spec.ph3_power,
                       critical_difference(0.55, 0.75, spec.ph2_alpha,
                                           spec.ph2_n_per_arm),
                       ph3.analyses[0].hr_critical, ph3.analyses[1].hr_critical,
                       odds});
    }
    return out;
}

std::vector<CdpCandidate> table4_candidates() {
    std::vector<CdpCandidate> out;
    for (const Table4Row& row : table4())
        out.push_back({row.name, row.total_n, row.odds});
    return out;
}

std::vector<double> figure1_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 250; ++i)
        grid.push_back(std::pow(10.0, -2.0 + 5.0 * i / 250.0));
    for (double extra : {9.0, 18.0, 19.0}) grid.push_back(extra);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::string table1_csv() {
    std::string out = "alpha,power,odds,percentile\n";
    for (const Table1Row& row : table1()) {
        out += format_double(row.alpha) + ',' + format_double(row.power) + ',' +
               format_double(row.odds) + ',' + format_double(row.percentile) + '\n';
    }
    return out;
}

std::string table2_csv() {
    std::string out = "power,n_total,n_pct,hr_cv_ia,hr_cv_fa,r10_ia,r10_fa,r01_fa\n";
    for (const Table2Row& r : table2()) {
        out += format_double(r.power) + ',' + std::to_string(r.n_total) + ',' +
               format_double(r.n_pct) + ',' + format_double(r.hr_cv_ia) + ',' +
               format_double(r.hr_cv_fa) + ',' + format_double(r.r10_ia) + ',' +
               format_double(r.r10_fa) + ',' + format_double(r.r01_fa) + '\n';
    }
    return out;
}

std::string table3_csv() {
    std::string out = "percentile,odds_threshold\n";
    for (const Table3Row& r : table3())
        out += format_double(r.percentile) + ',' + format_double(r.odds_threshold) + '\n';
    return out;
}

std::string table4_csv() {
    std::string out =
        "name,total_n,ph3_n,ph2_alpha,ph2_power,ph2_n_per_arm,ph3_fwer,ph3_power,"
        "ph2_diff_cv,hr_cv_ia,hr_cv_fa,r10_pp_ia,r10_pp_fa,r01_pn,r10_np_ia,"
        "r10_np_fa,r01_nn\n";
    for (const Table4Row& r : table4()) {
        out += r.name + ',' + std::to_string(r.total_n) + ',' +
               std::to_string(r.ph3_n) + ',' + format_double(r.ph2_alpha) + ',' +
               format_double(r.ph2_power) + ',' + std::to_string(r.ph2_n_per_arm) +
               ',' + format_double(r.ph3_fwer) + ',' + format_double(r.ph3_power) +
               ',' + format_double(r.ph2_diff_cv) + ',' +
               format_double(r.hr_cv_ia) + ',' + format_double(r.hr_cv_fa) + ',' +
               format_double(r.odds.r10_pp[0].value) + ',' +
               format_double(r.odds.r10_pp[1].value) + ',' +
               format_double(r.odds.r01_pn.value) + ',' +
               format_double(r.odds.r10_np[0].value) + ',' +
               format_double(r.odds.r10_np[1].value) + ',' +
               format_double(r.odds.r01_nn.value) + '\n';
    }
    return out;
}

std::string figure1_csv() {
    EquipoiseModel models[] = {bp11(), bp0505(), bp12()};
    std::string out = "odds,cdf_bp11,cdf_bp0505,cdf_bp12\n";
    for (double r : figure1_grid()) {
        out += format_double(r);
        for (const EquipoiseModel& m : models) out += ',' + format_double(odds_cdf(m, r));
        out += '\n';
    }
    return out;
}

}  // namespace equical
