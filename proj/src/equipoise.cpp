#include "equical/equipoise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "equical/numerics.hpp"
#include "equical/rng.hpp"

namespace equical {

namespace {

void check_shapes(const EquipoiseModel& m) {
    if (!(m.a > 0.0) || !(m.b > 0.0))
        throw std::domain_error("EquipoiseModel: shapes must be positive");
}

bool is_bp11(const EquipoiseModel& m) { return m.a == 1.0 && m.b == 1.0; }

}  // namespace

double odds_pdf(const EquipoiseModel& m, double r) {
    check_shapes(m);
    if (!(r > 0.0)) throw std::domain_error("odds_pdf: r must be positive");
    double ln = (m.a - 1.0) * std::log(r) - (m.a + m.b) * std::log1p(r) - log_beta(m.a, m.b);
    return std::exp(ln);
}

double odds_cdf(const EquipoiseModel& m, double r) {
    check_shapes(m);
    if (r < 0.0) throw std::domain_error("odds_cdf: r must be nonnegative");
    if (r == 0.0) return 0.0;
    if (std::isinf(r)) return 1.0;
    return regularized_incomplete_beta(m.a, m.b, r / (1.0 + r));
}

double odds_quantile(const EquipoiseModel& m, double p) {
    check_shapes(m);
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("odds_quantile: p must lie in (0,1)");

    // Bracket geometrically; BP tails are heavy, so work in log-odds.
    double lo = 1e-12, hi = 1e12;
    while (odds_cdf(m, lo) > p && lo > 1e-290) lo *= 1e-3;
    while (odds_cdf(m, hi) < p && hi < 1e290) hi *= 1e3;
    auto g = [&m, p](double y) { return odds_cdf(m, std::exp(y)) - p; };
    double y = find_root(g, std::log(lo), std::log(hi), 1e-13);
    return std::exp(y);
}

namespace {

// Product CDF of two BP(1,1) odds; removable singularity at c = 1.
double product_cdf_bp11(double c) {
    double eps = c - 1.0;
    if (std::abs(eps) < 1e-4)
        return 0.5 + eps / 6.0 - eps * eps / 12.0 + eps * eps * eps / 20.0;
    return c * (eps - std::log(c)) / (eps * eps);
}

}  // namespace

double product_cdf(const JointEquipoiseModel& j, double c) {
    check_shapes(j.phase2);
    check_shapes(j.phase3);
    if (!(c > 0.0)) throw std::domain_error("product_cdf: c must be positive");
    if (is_bp11(j.phase2) && is_bp11(j.phase3)) return product_cdf_bp11(c);

    // General composition: integrate f2(r) * F3(c/r) over r > 0.
    auto integrand = [&](double r) {
        return odds_pdf(j.phase2, r) * odds_cdf(j.phase3, c / r);
    };
    return integrate_to_infinity(integrand, 0.0, 1e-9);
}

QuantileEstimate product_quantile(const JointEquipoiseModel& j, double p) {
    check_shapes(j.phase2);
    check_shapes(j.phase3);
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("product_quantile: p must lie in (0,1)");

    if (is_bp11(j.phase2) && is_bp11(j.phase3)) {
        auto g = [p](double y) { return product_cdf_bp11(std::exp(y)) - p; };
        double lo = std::log(1e-12), hi = std::log(1e12);
        double y = find_root(g, lo, hi, 1e-13);
        return {std::exp(y), 0.0, true};
    }
    return product_quantile_mc(j, p, 2'000'000, 0x600d5eedULL);
}

QuantileEstimate product_quantile_mc(const JointEquipoiseModel& j, double p,
                                     std::int64_t samples, std::uint64_t seed) {
    check_shapes(j.phase2);
    check_shapes(j.phase3);
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("product_quantile_mc: p must lie in (0,1)");
    if (samples < 2) throw std::domain_error("product_quantile_mc: need at least 2 samples");

    auto draw_odds = [](const EquipoiseModel& m, RngStream& st) {
        if (is_bp11(m)) {
            double u = st.uniform();
            return u / (1.0 - u);
        }
        // Beta-Prime(a,b) as a ratio of independent gammas.
        double ga = st.gamma(m.a);
        double gb = st.gamma(m.b);
        return ga / gb;
    };

    std::vector<double> prod(static_cast<std::size_t>(samples));
    for (std::int64_t i = 0; i < samples; ++i) {
        RngStream st(seed, static_cast<std::uint64_t>(i));
        prod[static_cast<std::size_t>(i)] =
            draw_odds(j.phase2, st) * draw_odds(j.phase3, st);
    }
    std::sort(prod.begin(), prod.end());

    auto order_stat = [&prod](double rank) {
        std::int64_t n = static_cast<std::int64_t>(prod.size());
        std::int64_t k = std::clamp<std::int64_t>(std::llround(rank), 1, n);
        return prod[static_cast<std::size_t>(k - 1)];
    };
    double n = static_cast<double>(samples);
    double value = order_stat(p * n);
    // Distribution-free one-sigma bracket of the order statistic.
    double spread = std::sqrt(n * p * (1.0 - p));
    double lo = order_stat(p * n - spread);
    double hi = order_stat(p * n + spread);
    return {value, 0.5 * (hi - lo), false};
}

std::vector<std::pair<double, double>> figure1_curve(const EquipoiseModel& m,
                                                     const std::vector<double>& grid) {
    check_shapes(m);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::domain_error("figure1_curve: grid must be strictly increasing");

    std::vector<std::pair<double, double>> curve;
    curve.reserve(grid.size());
    for (double r : grid) curve.emplace_back(r, odds_cdf(m, r));
    return curve;
}

}  // namespace equical
