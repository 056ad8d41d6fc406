#include "cfam/entropy.hpp"

#include <cmath>

#include "cfam/errors.hpp"

namespace cfam {

namespace {

// 0 log 0 := 0; endpoints of the domain carry a point mass.
bool is_degenerate_point(const FamilyParams& p, double x) {
    if (x == 0.0) return true;
    if (p.finite_support()) {
        const double v = std::fma(p.c(), x, 1.0);
        if (v <= 0.0) return true;
    }
    return false;
}

// Certificate |  -log p_k | <= a + b k + c k^2 over the whole support.
// c = 0:  -log p_k = -k log(nx) + nx + log k!  and  log k! <= k^2.
// c > 0:  a = n/c > 1, so lgamma(k+1) <= lgamma(a+k) and
//         -log p_k <= lgamma(a) + k |log(cx)| + (a+k) log(1+cx).
GrowthEnvelope shannon_envelope(const FamilyParams& p, double x) {
    const double c = p.c();
    const double n = p.n();
    if (c == 0.0) {
        const double m = std::log(n * x);
        return {n * x, std::abs(m), 1.0};
    }
    const double a = n / c;
    const double lg = std::max(std::lgamma(a), 0.0);
    const double w = std::log1p(c * x);
    return {lg + a * w, std::abs(std::log(c * x)) + w, 0.0};
}

double rounding_slack(double value, long long terms) {
    return 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value)) *
           std::sqrt(double(terms) + 1.0);
}

EntropyValue from_series(const SeriesValue& s) {
    return {s.value, s.tail_bound + rounding_slack(s.value, s.terms_used), s.terms_used};
}

} // namespace

EntropyValue shannon(const FamilyParams& p, double x, const TruncationPolicy& policy) {
    if (!p.in_domain(x))
        raise(errc::domain_violation, "x=" + std::to_string(x) + " outside the family domain");
    if (is_degenerate_point(p, x)) return {0.0, 0.0, 1};
    const SeriesValue s = weighted_sum(
        p, x, [](long long, long double lp) { return -lp; }, policy, shannon_envelope(p, x));
    return from_series(s);
}

EntropyValue sum_squares(const FamilyParams& p, double x, const TruncationPolicy& policy) {
    if (!p.in_domain(x))
        raise(errc::domain_violation, "x=" + std::to_string(x) + " outside the family domain");
    if (is_degenerate_point(p, x)) return {1.0, 0.0, 1};
    const SeriesValue s = weighted_sum(
        p, x, [](long long, long double lp) { return std::exp(lp); }, policy,
        GrowthEnvelope::constant(1.0));
    return from_series(s);
}

EntropyValue renyi2(const FamilyParams& p, double x, const TruncationPolicy& policy) {
    const EntropyValue s = sum_squares(p, x, policy);
    const double low = s.value - s.error_bound;
    if (!(low > 0.0))
        raise(errc::degenerate_log, "S interval touches zero, cannot bound -log S");
    return {-std::log(s.value), s.error_bound / low, s.terms_used};
}

EntropyValue tsallis2(const FamilyParams& p, double x, const TruncationPolicy& policy) {
    const EntropyValue s = sum_squares(p, x, policy);
    return {1.0 - s.value, s.error_bound, s.terms_used};
}

double bessel_i0(double z) {
    if (!(z >= 0.0)) raise(errc::domain_violation, "bessel_i0 needs z >= 0");
    const long double w = (long double)z * (long double)z / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int m = 1; m < 400; ++m) {
        term *= w / ((long double)m * (long double)m);
        sum += term;
        if (term < 1e-18L * sum) break;
    }
    return (double)sum;
}

} // namespace cfam
