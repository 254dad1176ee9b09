#pragma once

#include <cstdint>

namespace equical {

enum class VarianceConvention { pooled_null, unpooled_alternative };

// Randomised phase 2 with a binary endpoint (proportion alive and
// progression-free at 9 months), one-sided normal-approximation test.
struct TwoProportionDesign {
    double p_soc;
    double p_inv;
    double alpha_one_sided;
    double power;  // achieved at n_per_arm
    std::int64_t n_per_arm;
    double critical_difference;
};

// Per-arm sample size, normal approximation with design-anchored variances.
std::int64_t sample_size_two_props(double p_soc, double p_inv,
                                   double alpha_one_sided, double power,
                                   bool continuity_correction = false);

double power_two_props(double p_soc, double p_inv, double alpha_one_sided,
                       std::int64_t n_per_arm);

// Smallest observed proportion difference declared significant.
double critical_difference(double p_soc, double p_inv, double alpha_one_sided,
                           std::int64_t n_per_arm,
                           VarianceConvention convention = VarianceConvention::pooled_null);

TwoProportionDesign design_two_props(double p_soc, double p_inv,
                                     double alpha_one_sided, double power);

}  // namespace equical
