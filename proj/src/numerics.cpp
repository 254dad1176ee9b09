#include "equical/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace equical {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

}  // namespace

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

double normal_cdf(double x) {
    // erfc is accurate into the far tail; saturates to 0/1 beyond ~ +-38.
    return 0.5 * std::erfc(-x / kSqrt2);
}

// Acklam's rational approximation followed by one Halley step against
// normal_cdf. The refinement brings |cdf(x) - p| to machine scale.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0,1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement; skipped in the extreme tail where the density
    // underflows and the approximation is already the best available.
    if (std::abs(x) < 37.0) {
        double e = normal_cdf(x) - p;
        double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

// Lentz continued fraction for the incomplete beta (NR form).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 400;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw NonConvergenceError("regularized_incomplete_beta: continued fraction stalled", h);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("regularized_incomplete_beta: shapes must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("regularized_incomplete_beta: x must lie in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    double ln_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
    if (!(tol > 0.0)) throw std::domain_error("find_root: tol must be positive");
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("find_root: no sign change on [lo, hi]");

    constexpr int kMaxIter = 200;
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc;
                double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > tol1)
            b += d;
        else
            b += (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw NonConvergenceError("find_root: iteration cap reached, best bracket width " +
                                  std::to_string(std::abs(c - b)),
                              b);
}

namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule.
constexpr std::array<double, 8> kKronrodNodes = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.2094821410847278, 0.2044329400752989, 0.1903505780647854,
    0.1690047266392679, 0.1406532597155259, 0.1047900103222502,
    0.0630920926299786, 0.0229353220105292,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697,
};

struct Panel {
    double a;
    double b;
    double value;
    double err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double fk = 0.0, fg = 0.0;
    double f0 = f(mid);
    fk += kKronrodWeights[0] * f0;
    fg += kGaussWeights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        double dx = half * kKronrodNodes[i];
        double fsum = f(mid - dx) + f(mid + dx);
        fk += kKronrodWeights[i] * fsum;
        if (i % 2 == 0) fg += kGaussWeights[i / 2] * fsum;
    }
    double kronrod = fk * half;
    double gauss = fg * half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

// Globally adaptive: always split the panel with the largest error estimate.
// Local tolerance splitting would starve integrable endpoint singularities.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
    if (lo == hi) return 0.0;

    constexpr std::size_t kMaxPanels = 4096;
    auto worse = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::vector<Panel> heap;
    heap.push_back(gk15(f, lo, hi));
    double total = heap[0].value;
    double total_err = heap[0].err;

    while (total_err > std::max(tol * std::abs(total), 1e-300) &&
           total_err > 1e-16 * std::abs(total) + 1e-300) {
        if (heap.size() >= kMaxPanels)
            throw NonConvergenceError("integrate: panel budget exhausted", total);
        std::pop_heap(heap.begin(), heap.end(), worse);
        Panel worst = heap.back();
        heap.pop_back();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw NonConvergenceError("integrate: interval vanished before convergence",
                                      total);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);
    }
    return total;
}

double integrate_to_infinity(const std::function<double(double)>& f, double lo,
                             double tol) {
    auto g = [&f, lo](double t) {
        double om = 1.0 - t;
        if (om <= 1e-300) return 0.0;  // boundary node after deep refinement
        double r = lo + t / om;
        return f(r) / (om * om);
    };
    return integrate(g, 0.0, 1.0, tol);
}

}  // namespace equical
