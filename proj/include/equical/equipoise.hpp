#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace equical {

// Pre-study odds R = P(H1)/P(H0) distributed Beta-Prime(a,b), i.e.
// P(H1) ~ Beta(a,b). BP(1,1) is the uniform-P(H0) reference model.
struct EquipoiseModel {
    double a;
    double b;
};

inline EquipoiseModel bp11() { return {1.0, 1.0}; }
inline EquipoiseModel bp0505() { return {0.5, 0.5}; }
inline EquipoiseModel bp12() { return {1.0, 2.0}; }

double odds_pdf(const EquipoiseModel& m, double r);
double odds_cdf(const EquipoiseModel& m, double r);
double odds_quantile(const EquipoiseModel& m, double p);

// Two independent pre-study odds, one per study of a two-trial plan.
struct JointEquipoiseModel {
    EquipoiseModel phase2;
    EquipoiseModel phase3;
};

// P(R2 * R3 <= c). Closed form for BP(1,1) x BP(1,1):
//   F(c) = c((c-1) - ln c)/(c-1)^2,  F(1) = 1/2,
// otherwise composed by quadrature of the two marginals.
double product_cdf(const JointEquipoiseModel& j, double c);

struct QuantileEstimate {
    double value;
    double standard_error;  // 0 when solved from the closed form
    bool exact;
};

// Product quantile; root of the closed form for BP(1,1)^2, Monte Carlo
// with an order-statistic standard error otherwise.
QuantileEstimate product_quantile(const JointEquipoiseModel& j, double p);
QuantileEstimate product_quantile_mc(const JointEquipoiseModel& j, double p,
                                     std::int64_t samples, std::uint64_t seed);

std::vector<std::pair<double, double>> figure1_curve(const EquipoiseModel& m,
                                                     const std::vector<double>& grid);

}  // namespace equical
