#include "equical/gs_design.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "equical/numerics.hpp"

namespace equical {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499,
};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541,
};

constexpr int kPanels = 24;
constexpr double kTailSigmas = 8.5;

double phi(double x) { return std::exp(-0.5 * x * x) / 2.5066282746310002; }
double upper_tail(double x) { return normal_cdf(-x); }

// Sub-density of the not-yet-stopped score statistic, held on quadrature
// nodes. b is on the score scale (z * sqrt(t)); w holds density * weight.
struct StageGrid {
    std::vector<double> b;
    std::vector<double> w;
};

StageGrid make_nodes(double lo, double hi) {
    StageGrid g;
    if (!(hi > lo)) return g;
    double panel = (hi - lo) / kPanels;
    g.b.reserve(kPanels * 16);
    g.w.reserve(kPanels * 16);
    for (int p = 0; p < kPanels; ++p) {
        double mid = lo + (p + 0.5) * panel;
        double half = 0.5 * panel;
        for (int i = 0; i < 8; ++i) {
            g.b.push_back(mid - half * kGlNodes[i]);
            g.w.push_back(half * kGlWeights[i]);
            g.b.push_back(mid + half * kGlNodes[i]);
            g.w.push_back(half * kGlWeights[i]);
        }
    }
    return g;
}

// Continuation density after stage 1: unrestricted normal truncated above
// at the boundary on the score scale.
StageGrid stage1_grid(double t1, double c1, double drift) {
    double sd = std::sqrt(t1);
    double mean = drift * t1;
    StageGrid g = make_nodes(mean - kTailSigmas * sd, c1 * sd);
    for (std::size_t i = 0; i < g.b.size(); ++i)
        g.w[i] *= phi((g.b[i] - mean) / sd) / sd;
    return g;
}

// P(score exceeds c*sqrt(t_k) at stage k | continuation density so far).
double crossing_from(const StageGrid& g, double delta, double drift, double threshold) {
    double sd = std::sqrt(delta);
    double shift = drift * delta;
    double total = 0.0;
    for (std::size_t i = 0; i < g.b.size(); ++i)
        total += g.w[i] * upper_tail((threshold - g.b[i] - shift) / sd);
    return total;
}

StageGrid propagate(const StageGrid& g, double delta, double drift, double lo,
                    double hi) {
    StageGrid next = make_nodes(lo, hi);
    double sd = std::sqrt(delta);
    double shift = drift * delta;
    for (std::size_t j = 0; j < next.b.size(); ++j) {
        double density = 0.0;
        for (std::size_t i = 0; i < g.b.size(); ++i)
            density += g.w[i] * phi((next.b[j] - g.b[i] - shift) / sd) / sd;
        next.w[j] *= density;
    }
    return next;
}

std::vector<double> crossing_probs(const std::vector<double>& t,
                                   const std::vector<double>& c, double drift) {
    std::size_t K = t.size();
    std::vector<double> probs(K);
    probs[0] = upper_tail(c[0] - drift * std::sqrt(t[0]));
    if (K == 1) return probs;

    StageGrid grid = stage1_grid(t[0], c[0], drift);
    for (std::size_t k = 1; k < K; ++k) {
        double delta = t[k] - t[k - 1];
        probs[k] = crossing_from(grid, delta, drift, c[k] * std::sqrt(t[k]));
        if (k + 1 < K) {
            double sd = std::sqrt(t[k]);
            grid = propagate(grid, delta, drift, drift * t[k] - kTailSigmas * sd,
                             c[k] * sd);
        }
    }
    return probs;
}

void check_fractions(const std::vector<double>& t) {
    if (t.empty()) throw std::domain_error("info fractions must be nonempty");
    double prev = 0.0;
    for (double tk : t) {
        if (!(tk > prev)) throw std::domain_error("info fractions must be strictly increasing");
        prev = tk;
    }
    if (std::abs(t.back() - 1.0) > 1e-12)
        throw std::domain_error("final info fraction must be 1");
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0,1)");
}

std::vector<double> design_fractions(const GroupSequentialDesign& d) {
    std::vector<double> t;
    for (const auto& a : d.analyses) t.push_back(a.info_fraction);
    return t;
}

std::vector<double> design_boundaries(const GroupSequentialDesign& d) {
    std::vector<double> c;
    for (const auto& a : d.analyses) c.push_back(a.z_boundary);
    return c;
}

}  // namespace

double obf_spending(double t, double alpha_one_sided) {
    check_alpha(alpha_one_sided);
    if (!(t > 0.0)) throw std::domain_error("obf_spending: t must be positive");
    if (t > 1.0) t = 1.0;
    double q = normal_quantile(1.0 - 0.5 * alpha_one_sided);
    return 2.0 - 2.0 * normal_cdf(q / std::sqrt(t));
}

std::vector<double> boundaries(const std::vector<double>& info_fractions,
                               double alpha_one_sided) {
    check_fractions(info_fractions);
    check_alpha(alpha_one_sided);

    std::size_t K = info_fractions.size();
    std::vector<double> spent(K);
    for (std::size_t k = 0; k < K; ++k)
        spent[k] = obf_spending(info_fractions[k], alpha_one_sided);

    std::vector<double> c(K);
    c[0] = normal_quantile(1.0 - spent[0]);
    if (K == 1) return c;

    StageGrid grid = stage1_grid(info_fractions[0], c[0], 0.0);
    for (std::size_t k = 1; k < K; ++k) {
        double delta = info_fractions[k] - info_fractions[k - 1];
        double increment = spent[k] - spent[k - 1];
        double sd = std::sqrt(info_fractions[k]);
        auto gap = [&](double cand) {
            return crossing_from(grid, delta, 0.0, cand * sd) - increment;
        };
        c[k] = find_root(gap, -4.0, 12.0, 1e-11);
        if (k + 1 < K)
            grid = propagate(grid, delta, 0.0, -kTailSigmas * sd, c[k] * sd);
    }
    return c;
}

std::vector<double> first_crossing_probs(const GroupSequentialDesign& design,
                                         double drift) {
    return crossing_probs(design_fractions(design), design_boundaries(design), drift);
}

std::int64_t required_events(double hr_alt, double alpha_one_sided, double power,
                             const std::vector<double>& info_fractions) {
    if (!(hr_alt > 0.0 && hr_alt < 1.0))
        throw std::domain_error("required_events: hr_alt must lie in (0,1)");
    check_alpha(alpha_one_sided);
    if (!(power > alpha_one_sided && power < 1.0))
        throw std::domain_error("required_events: power must lie in (alpha,1)");
    check_fractions(info_fractions);

    std::vector<double> c = boundaries(info_fractions, alpha_one_sided);
    double log_hr = std::log(1.0 / hr_alt);
    auto cum_power = [&](double events) {
        double theta = log_hr * std::sqrt(events / 4.0);
        std::vector<double> p = crossing_probs(info_fractions, c, theta);
        double total = 0.0;
        for (double pk : p) total += pk;
        return total;
    };

    // Fixed-design closed form seeds the bracket.
    double z_a = normal_quantile(1.0 - alpha_one_sided);
    double z_b = normal_quantile(power);
    double seed = 4.0 * (z_a + z_b) * (z_a + z_b) / (log_hr * log_hr);
    double lo = 0.5 * seed, hi = 2.0 * seed;
    while (cum_power(hi) < power && hi < 1e9) hi *= 2.0;
    double root = find_root([&](double d) { return cum_power(d) - power; }, lo, hi, 1e-6);

    auto events = static_cast<std::int64_t>(std::ceil(root - 1e-9));
    while (cum_power(static_cast<double>(events)) < power) ++events;
    return events;
}

double hr_critical_value(double z, std::int64_t events) {
    if (events <= 0) throw std::domain_error("hr_critical_value: events must be positive");
    return std::exp(-2.0 * z / std::sqrt(static_cast<double>(events)));
}

AnalysisLikelihoodRatios analysis_likelihood_ratios(const GroupSequentialDesign& design) {
    if (design.power_target >= 1.0)
        throw std::domain_error("analysis_likelihood_ratios: cumulative power of 1 is degenerate");

    std::vector<double> t = design_fractions(design);
    std::vector<double> c = design_boundaries(design);
    std::vector<double> up_alt = crossing_probs(t, c, design.drift);
    std::vector<double> low_alt = crossing_probs(t, c, -design.drift);
    std::vector<double> up_null = crossing_probs(t, c, 0.0);

    // A "+" outcome is a benefit stop under the alternative but any
    // significant stop (either tail, symmetric boundary) under the null.
    // Crossed-then-recrossed paths are negligible for OBF boundaries, so the
    // two-sided stop probability is the sum of the one-sided ones.
    AnalysisLikelihoodRatios out;
    double reach_alt = 1.0, reach_null = 1.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        double stop_null = 2.0 * up_null[k];
        double lr = (up_alt[k] / reach_alt) / (stop_null / reach_null);
        out.positive.push_back(lr);
        reach_alt -= up_alt[k] + low_alt[k];
        reach_null -= stop_null;
    }
    out.negative = (1.0 - design.fwer) / (1.0 - design.power_target);
    return out;
}

double expected_event_fraction(const AccrualModel& acc, double median_months,
                               double analysis_time) {
    if (!(acc.accrual_months > 0.0) || !(median_months > 0.0))
        throw std::domain_error("expected_event_fraction: inputs must be positive");
    if (analysis_time <= 0.0) return 0.0;

    double lambda = std::log(2.0) / median_months;
    double a = acc.accrual_months;
    double T = analysis_time;
    if (T >= a)
        return 1.0 - std::exp(-lambda * T) * std::expm1(lambda * a) / (lambda * a);
    return T / a + std::expm1(-lambda * T) / (lambda * a);
}

GroupSequentialDesign design_from_events(double fwer, double hr_alt,
                                         double soc_median_months,
                                         std::int64_t n_total,
                                         const std::vector<double>& info_fractions,
                                         const std::vector<std::int64_t>& events,
                                         double power_target) {
    check_fractions(info_fractions);
    check_alpha(fwer);
    if (!(hr_alt > 0.0 && hr_alt < 1.0))
        throw std::domain_error("design: hr_alt must lie in (0,1)");
    if (!(soc_median_months > 0.0))
        throw std::domain_error("design: soc median must be positive");
    if (events.size() != info_fractions.size())
        throw std::domain_error("design: one event count per analysis required");
    std::int64_t prev = 0;
    for (std::int64_t d : events) {
        if (d <= prev) throw std::domain_error("design: event counts must be increasing");
        prev = d;
    }

    std::vector<double> c = boundaries(info_fractions, 0.5 * fwer);

    GroupSequentialDesign design;
    design.fwer = fwer;
    design.hr_alt = hr_alt;
    design.soc_median_months = soc_median_months;
    design.n_total = n_total;
    design.drift =
        std::log(1.0 / hr_alt) * std::sqrt(static_cast<double>(events.back()) / 4.0);
    for (std::size_t k = 0; k < info_fractions.size(); ++k)
        design.analyses.push_back({info_fractions[k], events[k], c[k],
                                   hr_critical_value(c[k], events[k])});
    design.power_target =
        std::isnan(power_target) ? cumulative_power(design) : power_target;
    return design;
}

GroupSequentialDesign design_from_power(double fwer, double hr_alt,
                                        double soc_median_months,
                                        const std::vector<double>& info_fractions,
                                        double power, std::int64_t n_total) {
    std::int64_t final_events =
        required_events(hr_alt, 0.5 * fwer, power, info_fractions);
    std::vector<std::int64_t> events;
    for (std::size_t k = 0; k + 1 < info_fractions.size(); ++k)
        events.push_back(std::llround(info_fractions[k] * static_cast<double>(final_events)));
    events.push_back(final_events);
    return design_from_events(fwer, hr_alt, soc_median_months, n_total,
                              info_fractions, events, power);
}

double cumulative_power(const GroupSequentialDesign& design) {
    std::vector<double> p = first_crossing_probs(design, design.drift);
    double total = 0.0;
    for (double pk : p) total += pk;
    return total;
}

}  // namespace equical
