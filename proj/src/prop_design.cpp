#include "equical/prop_design.hpp"

#include <cmath>
#include <stdexcept>

#include "equical/numerics.hpp"

namespace equical {

namespace {

void check_props(double p_soc, double p_inv) {
    if (!(p_soc > 0.0 && p_soc < 1.0) || !(p_inv > 0.0 && p_inv < 1.0))
        throw std::domain_error("two_props: proportions must lie in (0,1)");
}

void check_superiority(double p_soc, double p_inv) {
    check_props(p_soc, p_inv);
    if (!(p_inv > p_soc))
        throw std::domain_error("two_props: superiority design needs p_inv > p_soc");
}

double pooled_sd2(double p_soc, double p_inv) {
    double pbar = 0.5 * (p_soc + p_inv);
    return 2.0 * pbar * (1.0 - pbar);
}

double unpooled_sd2(double p_soc, double p_inv) {
    return p_inv * (1.0 - p_inv) + p_soc * (1.0 - p_soc);
}

}  // namespace

std::int64_t sample_size_two_props(double p_soc, double p_inv,
                                   double alpha_one_sided, double power,
                                   bool continuity_correction) {
    check_superiority(p_soc, p_inv);
    if (!(alpha_one_sided > 0.0 && alpha_one_sided < 1.0))
        throw std::domain_error("two_props: alpha must lie in (0,1)");
    if (!(power > 0.0 && power < 1.0))
        throw std::domain_error("two_props: power must lie in (0,1)");

    double delta = p_inv - p_soc;
    double z_a = normal_quantile(1.0 - alpha_one_sided);
    double z_b = normal_quantile(power);
    double num = z_a * std::sqrt(pooled_sd2(p_soc, p_inv)) +
                 z_b * std::sqrt(unpooled_sd2(p_soc, p_inv));
    double n = num * num / (delta * delta);
    if (continuity_correction) {
        // Fleiss adjustment.
        n = 0.25 * n * std::pow(1.0 + std::sqrt(1.0 + 8.0 / (delta * n)), 2.0);
    }
    return static_cast<std::int64_t>(std::ceil(n - 1e-9));
}

double power_two_props(double p_soc, double p_inv, double alpha_one_sided,
                       std::int64_t n_per_arm) {
    check_props(p_soc, p_inv);
    if (n_per_arm < 2) throw std::domain_error("two_props: need n_per_arm >= 2");
    double delta = p_inv - p_soc;
    double z_a = normal_quantile(1.0 - alpha_one_sided);
    double n = static_cast<double>(n_per_arm);
    double z = (delta * std::sqrt(n) - z_a * std::sqrt(pooled_sd2(p_soc, p_inv))) /
               std::sqrt(unpooled_sd2(p_soc, p_inv));
    return normal_cdf(z);
}

double critical_difference(double p_soc, double p_inv, double alpha_one_sided,
                           std::int64_t n_per_arm, VarianceConvention convention) {
    check_props(p_soc, p_inv);
    if (n_per_arm < 2) throw std::domain_error("two_props: need n_per_arm >= 2");
    double z_a = normal_quantile(1.0 - alpha_one_sided);
    double var = convention == VarianceConvention::pooled_null
                     ? pooled_sd2(p_soc, p_inv)
                     : unpooled_sd2(p_soc, p_inv);
    return z_a * std::sqrt(var / static_cast<double>(n_per_arm));
}

TwoProportionDesign design_two_props(double p_soc, double p_inv,
                                     double alpha_one_sided, double power) {
    std::int64_t n = sample_size_two_props(p_soc, p_inv, alpha_one_sided, power);
    return {p_soc,
            p_inv,
            alpha_one_sided,
            power_two_props(p_soc, p_inv, alpha_one_sided, n),
            n,
            critical_difference(p_soc, p_inv, alpha_one_sided, n)};
}

}  // namespace equical
