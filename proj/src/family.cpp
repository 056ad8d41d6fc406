#include "cfam/family.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace cfam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string param_str(double c, double n) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(c=%g, n=%g)", c, n);
    return buf;
}

long double log_choose(long long m, long long k) {
    return std::lgamma((long double)m + 1.0L) - std::lgamma((long double)k + 1.0L) -
           std::lgamma((long double)(m - k) + 1.0L);
}

constexpr long double kInfL = std::numeric_limits<long double>::infinity();

// long double internals: downstream checks take 8th-order alternating
// differences of series values, so each value must be exact to its final
// double ulp.
long double log_basis_ld(const FamilyParams& p, long long k, double x) {
    if (!p.in_domain(x))
        raise(errc::domain_violation, "x=" + std::to_string(x) + " outside the family domain");
    if (k < 0) return -kInfL;
    const long double c = p.c();
    const long double n = p.n();

    if (p.finite_support()) {
        const long long l = p.support_size();
        if (k > l) return -kInfL;
        const long double u = -c * (long double)x;
        long double v = 1.0L + c * (long double)x;
        if (v < 0.0L) v = 0.0L;
        if (u <= 0.0L) return k == 0 ? 0.0L : -kInfL;
        if (v <= 0.0L) return k == l ? 0.0L : -kInfL;
        return log_choose(l, k) + (long double)k * std::log(u) +
               (long double)(l - k) * std::log(v);
    }

    if (x == 0.0) return k == 0 ? 0.0L : -kInfL;

    if (c == 0.0L)
        return (long double)k * std::log(n * (long double)x) - n * (long double)x -
               std::lgamma((long double)k + 1.0L);

    const long double a = n / c;
    return std::lgamma(a + (long double)k) - std::lgamma(a) -
           std::lgamma((long double)k + 1.0L) + (long double)k * std::log(c * (long double)x) -
           (a + (long double)k) * std::log1p(c * (long double)x);
}

} // namespace

FamilyParams FamilyParams::validated(double c, double n) {
    if (!(n > 0.0)) raise(errc::non_positive_n, "n must be > 0, got " + param_str(c, n));
    if (c >= 0.0) {
        if (!(n > c)) raise(errc::n_leq_c, "n must exceed c when c >= 0, got " + param_str(c, n));
        return FamilyParams(c, n, -1);
    }
    const double l_real = -n / c;
    const double l_round = std::nearbyint(l_real);
    if (!(l_round >= 1.0) || l_round > 9.0e15 ||
        std::abs(l_real - l_round) > 1e-9 * std::max(1.0, l_real)) {
        raise(errc::non_integer_l,
              "-n/c must be a positive integer when c < 0, got " + param_str(c, n));
    }
    return FamilyParams(c, n, static_cast<long long>(l_round));
}

FamilyParams FamilyParams::unchecked(double c, double n, long long finite_l) {
    return FamilyParams(c, n, finite_l);
}

FamilyParams validate_params(double c, double n) { return FamilyParams::validated(c, n); }

bool FamilyParams::in_domain(double x) const noexcept {
    if (!(x >= 0.0)) return false;
    if (c_ >= 0.0) return std::isfinite(x);
    // allow the right endpoint up to rounding of -1/c
    return x <= (-1.0 / c_) * (1.0 + 1e-14);
}

bool FamilyParams::in_open_domain(double x) const noexcept {
    if (!(x > 0.0)) return false;
    if (c_ >= 0.0) return std::isfinite(x);
    return x < -1.0 / c_;
}

FamilyParams FamilyParams::shifted(int j) const {
    if (l_ >= 0) {
        const long long l2 = l_ - j;
        if (l2 < 0)
            raise(errc::order_too_high, "shift past the finite support, l=" + std::to_string(l_) +
                                            " j=" + std::to_string(j));
        return FamilyParams(c_, -c_ * static_cast<double>(l2), l2);
    }
    return FamilyParams(c_, n_ + j * c_, -1);
}

double log_basis(const FamilyParams& p, long long k, double x) {
    return (double)log_basis_ld(p, k, x);
}

double basis(const FamilyParams& p, long long k, double x) {
    return (double)std::exp(log_basis_ld(p, k, x));
}

double basis_derivative(const FamilyParams& p, long long k, double x) {
    if (!p.in_open_domain(x))
        raise(errc::domain_violation,
              "derivatives need x strictly inside the domain, got x=" + std::to_string(x));
    if (p.finite_support() && p.support_size() == 0) return 0.0; // point-mass family is constant
    const FamilyParams up = p.shifted(1);
    const double left = k >= 1 ? basis(up, k - 1, x) : 0.0;
    return p.n() * (left - basis(up, k, x));
}

namespace {

struct KahanSum {
    long double sum = 0.0L;
    long double carry = 0.0L;

    void add(long double term) {
        const long double y = term - carry;
        const long double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Closed-form moment sums of the dominating geometric tail:
//   sum_{j>=1} r^j (a + b (K+j) + c (K+j)^2)
double geometric_tail(double r, double k0, const GrowthEnvelope& env) {
    const double g1 = r / (1.0 - r);
    const double g2 = r / ((1.0 - r) * (1.0 - r));
    const double g3 = r * (1.0 + r) / ((1.0 - r) * (1.0 - r) * (1.0 - r));
    return env.a * g1 + env.b * (k0 * g1 + g2) + env.c * (k0 * k0 * g1 + 2.0 * k0 * g2 + g3);
}

} // namespace

SeriesValue weighted_sum(const FamilyParams& p, double x,
                         const std::function<long double(long long, long double)>& f,
                         const TruncationPolicy& policy, const GrowthEnvelope& envelope) {
    if (!p.in_domain(x))
        raise(errc::domain_violation, "x=" + std::to_string(x) + " outside the family domain");
    if (!(policy.abs_tol > 0.0) || policy.max_terms < 1)
        raise(errc::domain_violation, "truncation policy must have abs_tol > 0 and max_terms >= 1");

    KahanSum acc;

    if (p.finite_support()) {
        const long long l = p.support_size();
        for (long long k = 0; k <= l; ++k) {
            const long double lp = log_basis_ld(p, k, x);
            const long double pk = std::exp(lp);
            if (pk > 0.0L) acc.add(pk * f(k, lp));
        }
        return {(double)acc.sum, 0.0, l + 1};
    }

    const double c = p.c();
    const double n = p.n();
    const double a = c > 0.0 ? n / c : 0.0;
    // limiting term ratio p_{k+1}/p_k as k -> inf
    const double q = c > 0.0 ? c * x / (1.0 + c * x) : 0.0;

    for (long long k = 0; k < policy.max_terms; ++k) {
        const long double lp = log_basis_ld(p, k, x);
        const long double pk = std::exp(lp);
        if (pk > 0.0L) acc.add(pk * f(k, lp));

        // Truncation certificate at K = k: for c = 0 the ratio n x/(k+1) is
        // decreasing, so the current ratio dominates the tail; for c > 0 with
        // a >= 1 likewise, while a < 1 has ratios increasing toward q.
        double r;
        if (c == 0.0) {
            r = n * x / double(k + 1);
        } else {
            const double ratio_k = (a + double(k)) / double(k + 1) * q;
            r = a >= 1.0 ? ratio_k : q;
        }
        if (r < 1.0) {
            const double tail = (double)pk * geometric_tail(r, double(k), envelope);
            if (tail <= policy.abs_tol) return {(double)acc.sum, tail, k + 1};
        }
    }
    raise(errc::max_terms_exceeded, "series tail not certified within " +
                                        std::to_string(policy.max_terms) + " terms at x=" +
                                        std::to_string(x));
}

SeriesValue expectation(const FamilyParams& p, double x,
                        const std::function<double(long long)>& f,
                        const TruncationPolicy& policy, const GrowthEnvelope& envelope) {
    return weighted_sum(
        p, x, [&f](long long k, long double) { return (long double)f(k); }, policy, envelope);
}

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::non_positive_n: return "NonPositiveN";
        case errc::n_leq_c: return "NLeqC";
        case errc::non_integer_l: return "NonIntegerL";
        case errc::domain_violation: return "DomainViolation";
        case errc::max_terms_exceeded: return "MaxTermsExceeded";
        case errc::order_too_high: return "OrderTooHigh";
        case errc::stencil_outside_domain: return "StencilOutsideDomain";
        case errc::degenerate_log: return "DegenerateLog";
        case errc::tolerance_not_reached: return "ToleranceNotReached";
        case errc::grid_too_coarse: return "GridTooCoarse";
    }
    return "UnknownError";
}

} // namespace cfam
