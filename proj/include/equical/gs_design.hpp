#pragma once

#include <cstdint>
#include <vector>

namespace equical {

struct GSAnalysis {
    double info_fraction;  // strictly increasing, last = 1
    std::int64_t events;
    double z_boundary;
    double hr_critical;  // exp(-2 z / sqrt(events))
};

// Uniform patient entry over accrual_months; followup_months is the planned
// calendar time of the final analysis.
struct AccrualModel {
    double accrual_months;
    double followup_months;
};

// Time-to-event group-sequential design with OBF-type alpha spending.
// fwer is two-sided; upper (benefit) boundaries are solved at fwer/2.
// drift is the mean of the final standardized log-rank statistic under
// hr_alt: ln(1/hr_alt) * sqrt(D_K/4).
struct GroupSequentialDesign {
    std::vector<GSAnalysis> analyses;
    double fwer;
    double hr_alt;
    double soc_median_months;
    std::int64_t n_total;
    double power_target;
    double drift;
};

// Cumulative one-sided alpha spent at information fraction t:
// 2 - 2*Phi(z_{1-alpha/2} / sqrt(t)).
double obf_spending(double t, double alpha_one_sided);

// Upper z-boundaries matching the OBF spending increments, solved stage by
// stage through the continuation-density recursion.
std::vector<double> boundaries(const std::vector<double>& info_fractions,
                               double alpha_one_sided);

// P(first upper-boundary crossing at analysis k | drift), one per analysis.
// Under drift 0 the values sum to fwer/2.
std::vector<double> first_crossing_probs(const GroupSequentialDesign& design,
                                         double drift);

// Smallest final event count whose cumulative crossing probability under
// drift(D) reaches the requested power.
std::int64_t required_events(double hr_alt, double alpha_one_sided, double power,
                             const std::vector<double>& info_fractions);

double hr_critical_value(double z, std::int64_t events);

struct AnalysisLikelihoodRatios {
    std::vector<double> positive;  // conditional on reaching each analysis
    double negative;               // (1 - fwer) / (1 - power target)
};

// Positive LR at analysis k compares the conditional probability of a benefit
// stop under the design alternative with the conditional probability of a
// (two-sided) significant outcome under the null. The negative LR uses the
// design's power target, matching how a negative read-out is reported.
AnalysisLikelihoodRatios analysis_likelihood_ratios(const GroupSequentialDesign& design);

// Expected fraction of participants with an observed event by calendar time
// analysis_time, exponential event times and uniform accrual.
double expected_event_fraction(const AccrualModel& acc, double median_months,
                               double analysis_time);

GroupSequentialDesign design_from_events(double fwer, double hr_alt,
                                         double soc_median_months,
                                         std::int64_t n_total,
                                         const std::vector<double>& info_fractions,
                                         const std::vector<std::int64_t>& events,
                                         double power_target);

// Sizes the final event count for the power target; interim event counts
// follow the information fractions.
GroupSequentialDesign design_from_power(double fwer, double hr_alt,
                                        double soc_median_months,
                                        const std::vector<double>& info_fractions,
                                        double power, std::int64_t n_total = 0);

// Realized probability of a benefit stop at any analysis under the design
// drift.
double cumulative_power(const GroupSequentialDesign& design);

}  // namespace equical
