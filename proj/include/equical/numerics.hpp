#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace equical {

// Thrown when an iterative scheme hits its cap; carries the best estimate
// obtained so far.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double partial)
        : std::runtime_error(what), partial_(partial) {}
    double partial() const { return partial_; }

private:
    double partial_;
};

// Standard normal density, CDF and quantile.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);

double log_beta(double a, double b);

// I_x(a,b), continued fraction with the symmetry switch at x = (a+1)/(a+b+2).
double regularized_incomplete_beta(double a, double b, double x);

// Brent-style bracketing root finder. Requires f(lo)*f(hi) <= 0.
// Deterministic and invariant under a global sign flip of f.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-13);

// Adaptive Gauss-Kronrod quadrature on [lo, hi], relative error target tol.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-8);

// Integral over [lo, inf) via the substitution r = lo + t/(1-t).
double integrate_to_infinity(const std::function<double(double)>& f, double lo,
                             double tol = 1e-8);

}  // namespace equical
