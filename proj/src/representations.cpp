#include "cfam/representations.hpp"

#include <cmath>
#include <string>

#include "cfam/errors.hpp"

namespace cfam {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

// P(u) = (1 - e^{-u})/u, P(0) = 1; expm1 keeps it cancellation-free.
double p_ratio(double u) {
    if (u == 0.0) return 1.0;
    return -std::expm1(-u) / u;
}

// (1 - P(u)) = u/2 - u^2/6 + ...; series below u = 0.5 where the direct
// subtraction would lose digits.
double one_minus_p_ratio(double u) {
    if (u < 0.5) {
        double term = u / 2.0;
        double acc = term;
        for (int m = 2; m < 40; ++m) {
            term *= -u * double(m) / (double(m) * double(m + 1));
            acc += term;
            if (std::abs(term) < 1e-19 * std::abs(acc)) break;
        }
        return acc;
    }
    return 1.0 - p_ratio(u);
}

} // namespace

QuadratureResult log_factorial_integral(long long l, LogFactorialForm form,
                                        const QuadratureSpec& spec) {
    if (l < 1) raise(errc::domain_violation, "log_factorial_integral needs l >= 1");
    const double ld = double(l);

    if (form == LogFactorialForm::logarithmic) {
        // ((1-(1-t)^l)/t - l) / log(1-t); near t = 0 the numerator collapses
        // to t * sum_{m>=2} (-1)^{m+1} C(l,m) t^{m-2}
        const auto integrand = [&](double t) -> double {
            if (t >= 1.0) return spec.limit_at_one ? 0.0 : ld - 1.0 / std::log1p(-t);
            if (t <= 0.0) return spec.limit_at_zero ? ld * (ld - 1.0) / 2.0 : 0.0;
            if (ld * t < 0.5) {
                double coeff = ld * (ld - 1.0) / 2.0; // C(l,2)
                double tpow = 1.0;
                double sign = -1.0;
                double acc = sign * coeff;
                for (long long m = 3; m <= l; ++m) {
                    coeff *= double(l - m + 1) / double(m);
                    tpow *= t;
                    sign = -sign;
                    const double term = sign * coeff * tpow;
                    acc += term;
                    if (std::abs(term) < 1e-20 * (std::abs(acc) + 1.0)) break;
                }
                return -acc * log_weight_kernel(t);
            }
            const double num = -std::expm1(ld * std::log1p(-t)) / t - ld;
            return num / std::log1p(-t);
        };
        return integrate(integrand, 0.0, 1.0, spec);
    }

    // exponential form over [0, s_max]; integrand l (P(s)-P(ls))/(s P(s)) e^{-s}
    const double s_max = 40.0 + std::log(ld);
    const auto integrand = [&](double s) -> double {
        if (s <= 0.0) return spec.limit_at_zero ? ld * (ld - 1.0) / 2.0 : 0.0;
        double dps; // (P(s) - P(ls)) / s
        if (ld * s < 0.5) {
            double lpow = ld;
            double fact = 2.0; // (m+1)! at m = 1
            double spow = 1.0;
            double sign = 1.0;
            dps = sign * (lpow - 1.0) / fact;
            for (int m = 2; m < 60; ++m) {
                lpow *= ld;
                fact *= double(m + 1);
                spow *= s;
                sign = -sign;
                const double term = sign * (lpow - 1.0) * spow / fact;
                dps += term;
                if (std::abs(term) < 1e-20 * (std::abs(dps) + 1.0)) break;
            }
        } else {
            dps = (p_ratio(s) - p_ratio(ld * s)) / s;
        }
        return ld * dps / p_ratio(s) * std::exp(-s);
    };
    QuadratureResult out = integrate(integrand, 0.0, s_max, spec);
    out.error_estimate += ld * std::exp(-s_max) / s_max; // truncated tail of [0, inf)
    return out;
}

QuadratureResult shannon_binomial_integral(const FamilyParams& p, double x,
                                           const QuadratureSpec& spec) {
    if (!p.finite_support() || p.support_size() < 1)
        raise(errc::domain_violation, "shannon_binomial_integral needs c < 0");
    if (!p.in_open_domain(x))
        raise(errc::domain_violation, "x must be strictly inside (0, -1/c)");

    const long long l = p.support_size();
    const double ld = double(l);
    const double u = -p.c() * x;
    const double v = 1.0 - u;

    const double closed = -ld * (u * std::log(u) + v * std::log(v));

    // W(t) = ((1-ut)^l + (1-vt)^l - 1 - (1-t)^l)/t^2
    //      = sum_{m=2..l} C(l,m) (-t)^{m-2} (u^m + v^m - 1)
    const auto integrand = [&](double t) -> double {
        if (t >= 1.0) return 0.0;
        const double w0 = -ld * (ld - 1.0) * u * v; // t -> 0 limit of W
        if (t <= 0.0) return spec.limit_at_zero ? w0 : 0.0;
        double w;
        if (ld * t < 0.5) {
            double coeff = ld * (ld - 1.0) / 2.0;
            double upow = u * u, vpow = v * v;
            double tpow = 1.0;
            double sign = 1.0;
            w = sign * coeff * (upow + vpow - 1.0);
            for (long long m = 3; m <= l; ++m) {
                coeff *= double(l - m + 1) / double(m);
                upow *= u;
                vpow *= v;
                tpow *= t;
                sign = -sign;
                const double term = sign * coeff * tpow * (upow + vpow - 1.0);
                w += term;
                if (coeff * tpow < 1e-20 * (std::abs(w) + 1.0)) break;
            }
        } else {
            w = (std::pow(1.0 - u * t, ld) + std::pow(1.0 - v * t, ld) - 1.0 -
                 std::pow(1.0 - t, ld)) /
                (t * t);
        }
        return log_weight_kernel(t) * w;
    };

    QuadratureResult out = integrate(integrand, 0.0, 1.0, spec);
    out.value += closed;
    return out;
}

QuadratureResult shannon_poisson_integral(double x, const QuadratureSpec& spec) {
    if (!(x > 0.0)) raise(errc::domain_violation, "shannon_poisson_integral needs x > 0");

    // (x - (1-e^{-sx})/s) / log(1-s) = x (1 - P(sx)) / log(1-s)
    const auto integrand = [&](double s) -> double {
        if (s >= 1.0) return 0.0;
        if (s <= 0.0) return spec.limit_at_zero ? -x * x / 2.0 : 0.0;
        return x * one_minus_p_ratio(s * x) / std::log1p(-s);
    };

    QuadratureResult out = integrate(integrand, 0.0, 1.0, spec);
    out.value = x - x * std::log(x) - out.value;
    return out;
}

QuadratureResult poisson_derivative_integral(int k, double x, const QuadratureSpec& spec) {
    if (k < 1) raise(errc::domain_violation, "poisson_derivative_integral needs k >= 1");
    if (!(x > 0.0)) raise(errc::domain_violation, "poisson_derivative_integral needs x > 0");

    // s^k e^{-sx} / log(1-s) = -s^{k-1} e^{-sx} kern(s)
    const auto integrand = [&](double s) -> double {
        if (s >= 1.0) return 0.0;
        if (s <= 0.0) return k == 1 ? -1.0 : 0.0;
        return -std::pow(s, k - 1) * std::exp(-s * x) * log_weight_kernel(s);
    };

    QuadratureResult out = integrate(integrand, 0.0, 1.0, spec);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out.value = sign * (factorial(k - 1) / std::pow(x, k) + out.value);
    return out;
}

QuadratureResult shannon_negbin_integral(double n, double x, const QuadratureSpec& spec) {
    if (!(n > 1.0)) raise(errc::domain_violation, "c = 1 requires n > 1");
    if (!(x > 0.0)) raise(errc::domain_violation, "shannon_negbin_integral needs x > 0");

    const double closed = n * ((1.0 + x) * std::log1p(x) - x * std::log(x));

    // (1-(1-t)^{n-1}) / (t log(1-t)) * (1-(1+tx)^{-n})
    const auto integrand = [&](double t) -> double {
        if (t >= 1.0) return 0.0;
        if (t <= 1e-100) return spec.limit_at_zero ? -n * (n - 1.0) * x : 0.0;
        const double lead = -std::expm1((n - 1.0) * std::log1p(-t)) / (t * std::log1p(-t));
        return lead * -std::expm1(-n * std::log1p(t * x));
    };

    QuadratureResult out = integrate(integrand, 0.0, 1.0, spec);
    out.value += closed;
    return out;
}

QuadratureResult negbin_derivative_integral(double n, int j, double x,
                                            const QuadratureSpec& spec) {
    if (!(n > 1.0)) raise(errc::domain_violation, "c = 1 requires n > 1");
    if (j < 1) raise(errc::domain_violation, "negbin_derivative_integral needs j >= 1");
    if (!(x > 0.0)) raise(errc::domain_violation, "needs x > 0");

    const auto integrand = [&](double t) -> double {
        if (t >= 1.0) return 0.0;
        if (t <= 0.0) return 0.0;
        return log_weight_kernel(t) * -std::expm1((n - 1.0) * std::log1p(-t)) *
               std::pow(1.0 + x * t, -(n + j + 1.0)) * std::pow(t, j - 1);
    };

    QuadratureResult out = integrate(integrand, 0.0, 1.0, spec);
    double prod = 1.0;
    for (int i = 1; i <= j; ++i) prod *= n + i;
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    out.value = n * sign *
                (factorial(j - 1) * (std::pow(x + 1.0, -j) - std::pow(x, -j)) + prod * out.value);
    return out;
}

QuadratureResult binomial_derivative_integral(const FamilyParams& p, int k, double x,
                                              const QuadratureSpec& spec) {
    if (!p.finite_support() || p.support_size() < 1)
        raise(errc::domain_violation, "binomial_derivative_integral needs c < 0");
    const long long l = p.support_size();
    if (k < 0 || l < 2 * k + 2)
        raise(errc::domain_violation, "needs support l >= 2k+2, got l=" + std::to_string(l));
    if (!p.in_open_domain(x))
        raise(errc::domain_violation, "x must be strictly inside (0, -1/c)");

    const double c = p.c();
    const double u = -c * x;
    const double v = 1.0 - u;
    const double e = double(l - 2 * k - 2);

    const auto integrand = [&](double t) -> double {
        if (t >= 1.0) return 0.0;
        if (t <= 0.0) return k == 0 ? 2.0 : 0.0;
        return log_weight_kernel(t) * (std::pow(1.0 - u * t, e) + std::pow(1.0 - v * t, e)) *
               std::pow(t, 2 * k);
    };

    QuadratureResult out = integrate(integrand, 0.0, 1.0, spec);
    double falling = 1.0;
    for (int i = 0; i <= 2 * k + 1; ++i) falling *= double(l - i);
    const double term1 = c * double(l) * factorial(2 * k) *
                         (std::pow(x, -(2 * k + 1)) - std::pow(c / (1.0 + c * x), 2 * k + 1));
    out.value = term1 + std::pow(c, 2 * k + 2) * falling * out.value;
    return out;
}

QuadratureResult beta_identity_fixture(int j, double n, double x, const QuadratureSpec& spec) {
    if (j < 1 || !(n > 0.0) || !(x >= 0.0))
        raise(errc::domain_violation, "beta_identity_fixture needs j >= 1, n > 0, x >= 0");

    const auto integrand = [&](double t) -> double {
        return std::pow(t, j - 1) * std::pow(1.0 - t, n) * std::pow(1.0 + x * t, -(n + j + 1.0));
    };
    return integrate(integrand, 0.0, 1.0, spec);
}

double beta_identity_closed_form(int j, double n, double x) {
    double prod = 1.0;
    for (int i = 1; i <= j; ++i) prod *= n + i;
    return factorial(j - 1) / prod * std::pow(x + 1.0, -j);
}

} // namespace cfam
