#include "cfam/derivative.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "cfam/errors.hpp"

namespace cfam {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

// j-th derivative of L(x) = log((1+cx)/x); j = 0 returns L itself.
double log_ratio_derivative(double c, double x, int j) {
    if (j == 0) return std::log1p(c * x) - std::log(x);
    const double s = (j % 2 == 1) ? 1.0 : -1.0; // (-1)^{j-1}
    return s * factorial(j - 1) *
           (std::pow(c / (1.0 + c * x), j) - std::pow(1.0 / x, j));
}

double g_term(double n, double c, long long k) {
    return std::log(double(k) + 1.0) - std::log(n + c * double(k));
}

// |g(k)| <= a + b k with g(k) = log((k+1)/(n+ck)), c >= 0:
// log(k+1) <= k and |log(n+ck)| <= |log n| + n + ck.
GrowthEnvelope g_envelope(double n, double c) {
    return {std::abs(std::log(n)) + n, 1.0 + std::max(c, 0.0), 0.0};
}

void require_interior(const FamilyParams& p, double x) {
    if (!p.in_open_domain(x))
        raise(errc::domain_violation,
              "derivatives need x strictly inside the domain, got x=" + std::to_string(x));
}

} // namespace

double shannon_prime(const FamilyParams& p, double x, const TruncationPolicy& policy) {
    return shannon_derivative_exact(p, x, 1, policy);
}

double shannon_derivative_exact(const FamilyParams& p, double x, int order,
                                const TruncationPolicy& policy) {
    if (order < 1 || order > kMaxDerivativeOrder)
        raise(errc::order_too_high, "derivative order must be in [1, " +
                                        std::to_string(kMaxDerivativeOrder) + "], got " +
                                        std::to_string(order));
    require_interior(p, x);

    const double c = p.c();
    const double n = p.n();
    const int j = order - 1;

    const double closed = n * log_ratio_derivative(c, x, j);

    // n (n+c)(n+2c)...(n+jc); contains the exact zero n+lc for c<0, j>=l.
    double factor = n;
    if (p.finite_support()) {
        const long long l = p.support_size();
        for (int i = 1; i <= j; ++i) factor *= -c * double(l - i);
    } else {
        for (int i = 1; i <= j; ++i) factor *= n + i * c;
    }
    if (factor == 0.0) return closed;

    // Pascal row for the forward difference D^j g
    std::array<double, kMaxDerivativeOrder> binom{};
    binom[0] = 1.0;
    for (int i = 1; i <= j; ++i)
        binom[i] = binom[i - 1] * double(j - i + 1) / double(i);

    const auto diff_g = [&](long long k) {
        double acc = 0.0;
        for (int i = 0; i <= j; ++i) {
            const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom[i] * g_term(n, c, k + i);
        }
        return acc;
    };

    // |D^j g(k)| <= 2^j max_i |g(k+i)|
    const GrowthEnvelope ge = g_envelope(n, c);
    const double two_j = std::pow(2.0, j);
    const GrowthEnvelope env{two_j * (ge.a + ge.b * j), two_j * ge.b, 0.0};

    TruncationPolicy tightened = policy;
    tightened.abs_tol = policy.abs_tol / std::max(1.0, std::abs(factor));

    const SeriesValue s = expectation(p.shifted(order), x, diff_g, tightened, env);
    return closed + factor * s.value;
}

double sum_squares_prime(const FamilyParams& p, double x, const TruncationPolicy& policy) {
    require_interior(p, x);
    if (p.finite_support() && p.support_size() == 0) return 0.0;
    const FamilyParams up = p.shifted(1);
    const auto f = [&](long long k) {
        const double left = k >= 1 ? basis(up, k - 1, x) : 0.0;
        return left - basis(up, k, x);
    };
    const SeriesValue s = expectation(p, x, f, policy, GrowthEnvelope::constant(1.0));
    return 2.0 * p.n() * s.value;
}

namespace {

// Central difference of order m with step h; offsets are (m/2 - i) h, which
// are half-integer multiples of h when m is odd.
double central_difference(const std::function<double(double)>& f, double x, int m, double h) {
    double binom = 1.0;
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        if (i > 0) binom *= double(m - i + 1) / double(i);
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom * f(x + (0.5 * m - i) * h);
    }
    return acc / std::pow(h, m);
}

} // namespace

FdResult finite_difference_derivative(const std::function<double(double)>& f, double x, int order,
                                      const FdPolicy& policy) {
    if (order < 1 || order > 6)
        raise(errc::order_too_high, "finite differences support orders 1..6");

    static constexpr double base_h[7] = {0.0, 1e-3, 3e-3, 8e-3, 1e-2, 2.5e-2, 3.5e-2};
    double h = policy.h > 0.0 ? policy.h : base_h[order] * std::max(std::abs(x), 0.25);

    // keep the widest stencil (offset m h / 2) inside (domain_lo, domain_hi)
    const double dist = std::min(x - policy.domain_lo, policy.domain_hi - x);
    if (!(dist > 0.0))
        raise(errc::stencil_outside_domain, "x=" + std::to_string(x) + " not inside the domain");
    if (std::isfinite(dist)) h = std::min(h, 1.8 * dist / double(order));
    if (!(h > 1e-12 * std::max(1.0, std::abs(x))))
        raise(errc::stencil_outside_domain,
              "no usable step at x=" + std::to_string(x) + " for order " + std::to_string(order));

    const double coarse = central_difference(f, x, order, h);
    const double fine = central_difference(f, x, order, 0.5 * h);
    const double value = (4.0 * fine - coarse) / 3.0;
    const double err = std::abs(value - fine) +
                       std::numeric_limits<double>::epsilon() * std::abs(value);
    return {value, err};
}

} // namespace cfam
