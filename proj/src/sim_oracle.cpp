#include "equical/sim_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "equical/format.hpp"
#include "equical/rng.hpp"

namespace equical {

std::string SimulationReport::to_csv() const {
    std::string out = "name,estimate,se,replicates,seed\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += names[i];
        out += ',';
        out += format_double(estimates[i]);
        out += ',';
        out += format_double(standard_errors[i]);
        out += ',';
        out += std::to_string(replicates);
        out += ',';
        out += std::to_string(seed);
        out += '\n';
    }
    return out;
}

int simulation_thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    int count = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("EQUICAL_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < count) count = cap;
        if (cap >= 1 && count < 1) count = cap;
    }
    return std::max(count, 1);
}

namespace {

int resolve_threads(int requested) {
    return requested >= 1 ? requested : simulation_thread_count();
}

double binomial_se(double p_hat, std::int64_t n) {
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

// One simulated trial; returns the 1-based analysis index of the first
// benefit stop, or 0 when no boundary is crossed.
struct GsScratch {
    std::vector<double> entry;
    std::vector<double> surv;
    std::vector<double> calendar;
    std::vector<double> time_obs;
    std::vector<std::uint8_t> event;
    std::vector<std::uint8_t> arm;
    std::vector<std::int32_t> order;
};

int run_gs_replicate(const GroupSequentialDesign& design, double hazard_soc,
                     double hazard_inv, double accrual, RngStream& st,
                     GsScratch& s) {
    std::size_t n = static_cast<std::size_t>(design.n_total);
    s.entry.resize(n);
    s.surv.resize(n);
    s.calendar.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool investigational = (i % 2) == 1;
        s.entry[i] = st.uniform() * accrual;
        s.surv[i] = st.exponential(investigational ? hazard_inv : hazard_soc);
        s.calendar[i] = s.entry[i] + s.surv[i];
    }

    for (std::size_t k = 0; k < design.analyses.size(); ++k) {
        std::size_t d_k = static_cast<std::size_t>(design.analyses[k].events);
        // Calendar time of the d_k-th pooled event.
        std::vector<double> cal = s.calendar;
        std::nth_element(cal.begin(), cal.begin() + (d_k - 1), cal.end());
        double analysis_time = cal[d_k - 1];

        // Administratively censored snapshot at that time.
        s.time_obs.clear();
        s.event.clear();
        s.arm.clear();
        for (std::size_t i = 0; i < n; ++i) {
            double followup = analysis_time - s.entry[i];
            if (followup <= 0.0) continue;
            bool ev = s.surv[i] <= followup;
            s.time_obs.push_back(ev ? s.surv[i] : followup);
            s.event.push_back(ev ? 1 : 0);
            s.arm.push_back((i % 2) == 1 ? 1 : 0);
        }
        std::size_t m = s.time_obs.size();
        s.order.resize(m);
        for (std::size_t i = 0; i < m; ++i) s.order[i] = static_cast<std::int32_t>(i);
        std::sort(s.order.begin(), s.order.end(), [&s](std::int32_t a, std::int32_t b) {
            if (s.time_obs[a] != s.time_obs[b]) return s.time_obs[a] < s.time_obs[b];
            return s.event[a] > s.event[b];
        });

        double n1 = 0.0, n0 = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            (s.arm[i] ? n1 : n0) += 1.0;
        double u = 0.0, v = 0.0;
        for (std::int32_t idx : s.order) {
            double total = n1 + n0;
            if (total <= 1.0) break;
            if (s.event[idx]) {
                double share = n1 / total;
                u += static_cast<double>(s.arm[idx]) - share;
                v += share * (1.0 - share);
            }
            (s.arm[idx] ? n1 : n0) -= 1.0;
        }
        if (v > 0.0) {
            double z = -u / std::sqrt(v);  // benefit = event deficit in arm 1
            if (z >= design.analyses[k].z_boundary)
                return static_cast<int>(k) + 1;
        }
    }
    return 0;
}

}  // namespace

SimulationReport simulate_gs_tte(const GroupSequentialDesign& design, double true_hr,
                                 const AccrualModel& acc, std::int64_t replicates,
                                 std::uint64_t seed, int threads) {
    if (design.analyses.empty())
        throw std::domain_error("simulate_gs_tte: design has no analyses");
    if (design.n_total < design.analyses.back().events)
        throw std::domain_error("simulate_gs_tte: event counts exceed n_total");
    if (!(true_hr > 0.0)) throw std::domain_error("simulate_gs_tte: true_hr must be positive");
    if (replicates < 1) throw std::domain_error("simulate_gs_tte: need replicates >= 1");

    double hazard_soc = std::log(2.0) / design.soc_median_months;
    double hazard_inv = true_hr * hazard_soc;
    std::size_t K = design.analyses.size();

    int workers = resolve_threads(threads);
    std::vector<std::vector<std::uint64_t>> counts(
        static_cast<std::size_t>(workers), std::vector<std::uint64_t>(K, 0));

    auto worker = [&](int w) {
        GsScratch scratch;
        std::vector<std::uint64_t>& mine = counts[static_cast<std::size_t>(w)];
        for (std::int64_t r = w; r < replicates; r += workers) {
            RngStream st(seed, static_cast<std::uint64_t>(r));
            int stop = run_gs_replicate(design, hazard_soc, hazard_inv,
                                        acc.accrual_months, st, scratch);
            if (stop > 0) ++mine[static_cast<std::size_t>(stop - 1)];
        }
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    std::vector<std::uint64_t> total(K, 0);
    for (const auto& c : counts)
        for (std::size_t k = 0; k < K; ++k) total[k] += c[k];

    SimulationReport report;
    report.replicates = replicates;
    report.seed = seed;
    std::uint64_t any = 0;
    for (std::size_t k = 0; k < K; ++k) {
        double p_hat = static_cast<double>(total[k]) / static_cast<double>(replicates);
        report.names.push_back("first_rejection_" + std::to_string(k + 1));
        report.estimates.push_back(p_hat);
        report.standard_errors.push_back(binomial_se(p_hat, replicates));
        any += total[k];
    }
    double p_any = static_cast<double>(any) / static_cast<double>(replicates);
    report.names.push_back("total_rejection");
    report.estimates.push_back(p_any);
    report.standard_errors.push_back(binomial_se(p_any, replicates));
    return report;
}

SimulationReport simulate_two_prop(const TwoProportionDesign& design,
                                   double true_p_soc, double true_p_inv,
                                   std::int64_t replicates, std::uint64_t seed,
                                   int threads) {
    if (replicates < 1) throw std::domain_error("simulate_two_prop: need replicates >= 1");
    if (!(true_p_soc >= 0.0 && true_p_soc <= 1.0) ||
        !(true_p_inv >= 0.0 && true_p_inv <= 1.0))
        throw std::domain_error("simulate_two_prop: proportions must lie in [0,1]");

    std::int64_t n = design.n_per_arm;
    // Success-count threshold matching the fixed critical difference.
    std::int64_t k_min = static_cast<std::int64_t>(
        std::ceil(design.critical_difference * static_cast<double>(n) - 1e-9));

    int workers = resolve_threads(threads);
    std::vector<std::uint64_t> rejections(static_cast<std::size_t>(workers), 0);

    auto worker = [&](int w) {
        std::uint64_t mine = 0;
        for (std::int64_t r = w; r < replicates; r += workers) {
            RngStream st(seed, static_cast<std::uint64_t>(r));
            std::int64_t x_inv = 0, x_soc = 0;
            for (std::int64_t i = 0; i < n; ++i) x_inv += st.bernoulli(true_p_inv);
            for (std::int64_t i = 0; i < n; ++i) x_soc += st.bernoulli(true_p_soc);
            if (x_inv - x_soc >= k_min) ++mine;
        }
        rejections[static_cast<std::size_t>(w)] = mine;
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    std::uint64_t total = 0;
    for (std::uint64_t c : rejections) total += c;
    double p_hat = static_cast<double>(total) / static_cast<double>(replicates);

    SimulationReport report;
    report.replicates = replicates;
    report.seed = seed;
    report.names.push_back("rejection_rate");
    report.estimates.push_back(p_hat);
    report.standard_errors.push_back(binomial_se(p_hat, replicates));
    return report;
}

QuantileEstimate mc_product_quantile(const JointEquipoiseModel& j, double p,
                                     std::int64_t samples, std::uint64_t seed) {
    return product_quantile_mc(j, p, samples, seed);
}

}  // namespace equical
