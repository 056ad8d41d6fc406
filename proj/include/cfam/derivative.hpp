#pragma once

#include <functional>
#include <limits>

#include "cfam/family.hpp"

namespace cfam {

inline constexpr int kMaxDerivativeOrder = 10;

// First derivative of the Shannon entropy,
//   H'(x) = n ( log((1+cx)/x) + sum_k p_{n+c,k}(x) log((k+1)/(n+ck)) ).
double shannon_prime(const FamilyParams& p, double x, const TruncationPolicy& policy = {});

// Exact m-th derivative of H (m >= 1), by repeated application of the basis
// derivative recurrence:
//   H^(m) = n L^(m-1)(x)
//         + n (n+c)(n+2c)...(n+(m-1)c) sum_k p_{n+mc,k}(x) D^{m-1} g(k),
// with L(x) = log((1+cx)/x), g(k) = log((k+1)/(n+ck)) and D the forward
// difference in k. For c < 0 the scalar product vanishes once m > l and only
// the closed-form L part remains.
double shannon_derivative_exact(const FamilyParams& p, double x, int order,
                                const TruncationPolicy& policy = {});

// S'(x) = 2n sum_k p_{n,k}(x) (p_{n+c,k-1}(x) - p_{n+c,k}(x)).
double sum_squares_prime(const FamilyParams& p, double x, const TruncationPolicy& policy = {});

// Central finite differences with one Richardson extrapolation step (h, h/2).
struct FdPolicy {
    double h = 0.0; // 0 = choose per order and x
    double domain_lo = -std::numeric_limits<double>::infinity();
    double domain_hi = std::numeric_limits<double>::infinity();
};

struct FdResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

FdResult finite_difference_derivative(const std::function<double(double)>& f, double x,
                                      int order, const FdPolicy& policy = {});

} // namespace cfam
