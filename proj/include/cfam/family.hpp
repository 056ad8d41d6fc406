#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "cfam/errors.hpp"

namespace cfam {

// Parameters (c, n) of the basis family
//
//   p_{n,k}(x) = (-1)^k C(-n/c, k) (cx)^k (1+cx)^{-n/c-k}   for c != 0,
//   p_{n,k}(x) = (nx)^k e^{-nx} / k!                        for c == 0,
//
// which specializes to the binomial (c = -1), Poisson (c = 0) and negative
// binomial (c = 1) weights. For c < 0 the support is finite, k = 0..l with
// l = -n/c, and x ranges over [0, -1/c]; otherwise k is unbounded and
// x >= 0.
class FamilyParams {
public:
    // Public validated constructor: requires n > 0, n > c when c >= 0, and
    // -n/c a positive integer when c < 0.
    static FamilyParams validated(double c, double n);

    // Internal constructor that also admits the degenerate l = 0 family
    // (point mass at k = 0) produced by parameter shifts.
    static FamilyParams unchecked(double c, double n, long long finite_l);

    double c() const noexcept { return c_; }
    double n() const noexcept { return n_; }

    bool finite_support() const noexcept { return l_ >= 0; }
    // Support size l; only meaningful when finite_support().
    long long support_size() const noexcept { return l_; }

    double domain_min() const noexcept { return 0.0; }
    double domain_max() const noexcept {
        return c_ < 0.0 ? -1.0 / c_ : std::numeric_limits<double>::infinity();
    }
    bool in_domain(double x) const noexcept;
    bool in_open_domain(double x) const noexcept;

    // Family (n + j*c, c) produced by j derivative steps.
    FamilyParams shifted(int j) const;

private:
    FamilyParams(double c, double n, long long l) : c_(c), n_(n), l_(l) {}

    double c_;
    double n_;
    long long l_; // -1 when support is unbounded
};

// spec'd entry point; same checks as FamilyParams::validated
FamilyParams validate_params(double c, double n);

struct TruncationPolicy {
    double abs_tol = 1e-12;
    long long max_terms = 20000;
};

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0; // certified bound on the omitted remainder; 0 for finite support
    long long terms_used = 0;
};

// Certificate that |f(k)| <= a + b*k + c*k^2 on the whole support.
// The quadratic term is needed because entropy summands grow like k log k.
struct GrowthEnvelope {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;

    double at(double k) const noexcept { return a + k * (b + k * c); }

    static GrowthEnvelope constant(double bound) { return {bound, 0.0, 0.0}; }
};

// log p_{n,k}(x); -inf where the basis value is 0 (k beyond a finite support,
// or x at an endpoint with the off-point index). Values are computed in log
// space via lgamma so large k and n do not overflow.
double log_basis(const FamilyParams& p, long long k, double x);

double basis(const FamilyParams& p, long long k, double x);

// d/dx p_{n,k}(x) = n (p_{n+c,k-1}(x) - p_{n+c,k}(x)); x must be interior.
double basis_derivative(const FamilyParams& p, long long k, double x);

// sum_k p_{n,k}(x) f(k, log p_{n,k}(x)) with a certified tail bound.
// For unbounded support the tail is dominated by a geometric series from the
// first index K past the term peak where p_{k+1}/p_k <= r < 1, combined with
// the caller's growth envelope for f.
//
// Terms are carried in long double so the returned value is correct to the
// last double ulp; high-order difference checks downstream depend on that.
SeriesValue weighted_sum(const FamilyParams& p, double x,
                         const std::function<long double(long long, long double)>& f,
                         const TruncationPolicy& policy,
                         const GrowthEnvelope& envelope);

// sum_k p_{n,k}(x) f(k)
SeriesValue expectation(const FamilyParams& p, double x,
                        const std::function<double(long long)>& f,
                        const TruncationPolicy& policy,
                        const GrowthEnvelope& envelope);

} // namespace cfam
