// Test-only oracles, independent of the library's implementation paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

// Absolute-tolerance check with context in the failure message.
#define CHECK_CLOSE(val, target, tol)                                        \
    do {                                                                     \
        double cc_v = (val);                                                 \
        double cc_t = (target);                                              \
        INFO("value=" << cc_v << " target=" << cc_t                          \
                      << " |diff|=" << std::abs(cc_v - cc_t)                 \
                      << " tol=" << (tol));                                  \
        CHECK(std::abs(cc_v - cc_t) <= (tol));                               \
    } while (0)

namespace oracle {

// Recursive Simpson quadrature; deliberately not the library integrator.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

inline double quadrature(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-13) {
    double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 48);
}

// Standard normal CDF by quadrature of the density from 0.
inline double normal_cdf(double x) {
    if (x < 0.0) return 1.0 - normal_cdf(-x);
    auto density = [](double t) {
        return std::exp(-0.5 * t * t) / 2.5066282746310002;
    };
    double upper = std::min(x, 40.0);
    return 0.5 + quadrature(density, 0.0, upper);
}

// Bisection inverse of the quadrature CDF.
inline double normal_quantile(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// log C(n, k) via lgamma.
inline double log_choose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n + 1)) -
           std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(n - k + 1));
}

inline std::vector<double> binomial_pmf(std::int64_t n, double p) {
    std::vector<double> pmf(static_cast<std::size_t>(n + 1));
    for (std::int64_t k = 0; k <= n; ++k) {
        double lp = log_choose(n, k);
        if (k > 0) lp += static_cast<double>(k) * std::log(p);
        if (k < n) lp += static_cast<double>(n - k) * std::log1p(-p);
        pmf[static_cast<std::size_t>(k)] = std::exp(lp);
    }
    return pmf;
}

// Exact rejection probability of the fixed-threshold two-proportion test:
// P((X_inv - X_soc)/n >= critical_difference) by full enumeration.
inline double two_prop_rejection_exact(std::int64_t n, double p_inv, double p_soc,
                                       double critical_difference) {
    std::vector<double> pmf_inv = binomial_pmf(n, p_inv);
    std::vector<double> pmf_soc = binomial_pmf(n, p_soc);
    auto k_min = static_cast<std::int64_t>(
        std::ceil(critical_difference * static_cast<double>(n) - 1e-9));
    // P(X_inv - X_soc >= k_min) = sum over x_soc of P(soc) * P(inv >= soc + k_min)
    std::vector<double> tail_inv(static_cast<std::size_t>(n + 2), 0.0);
    for (std::int64_t k = n; k >= 0; --k)
        tail_inv[static_cast<std::size_t>(k)] =
            tail_inv[static_cast<std::size_t>(k + 1)] + pmf_inv[static_cast<std::size_t>(k)];
    double total = 0.0;
    for (std::int64_t s = 0; s <= n; ++s) {
        std::int64_t need = s + k_min;
        if (need < 0) need = 0;
        if (need > n + 1) need = n + 1;
        total += pmf_soc[static_cast<std::size_t>(s)] * tail_inv[static_cast<std::size_t>(need)];
    }
    return total;
}

}  // namespace oracle
