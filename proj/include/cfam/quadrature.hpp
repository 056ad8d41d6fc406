#pragma once

#include <functional>

namespace cfam {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    int max_subdivisions = 2000;
    // Endpoint handling for the representation integrands: substitute the
    // analytic limit / a cancellation-free series inside a guard band near
    // t = 0, and the continuous extension 0 at t = 1.
    bool limit_at_zero = true;
    bool limit_at_one = true;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
};

// Adaptive bisection with a nested Gauss-Kronrod 7/15 rule. The integrand is
// never sampled at interval endpoints. Throws tolerance_not_reached when the
// subdivision budget is exhausted before the error estimate drops below
// abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

// -t / log(1-t), continuously extended by 1 at t = 0 and 0 at t = 1.
// Lies in (0,1) on (0,1).
double log_weight_kernel(double t);

} // namespace cfam
