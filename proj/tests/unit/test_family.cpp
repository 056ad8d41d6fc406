#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "cfam/family.hpp"
#include "oracles.hpp"

using namespace cfam;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const GrowthEnvelope kOnes{1.0, 0.0, 0.0};
const GrowthEnvelope kLinear{0.0, 1.0, 0.0};
const GrowthEnvelope kQuadratic{0.0, 0.0, 1.0};

// valid n choices per c for the property matrix
std::vector<double> valid_n(double c) {
    std::vector<double> out;
    for (double n : {1.0, 2.0, 5.0, 10.0}) {
        if (c < 0.0) {
            const double l = -n / c;
            if (std::abs(l - std::round(l)) < 1e-12 && l >= 1.0) out.push_back(n);
        } else if (n > c) {
            out.push_back(n);
        }
    }
    return out;
}

} // namespace

TEST_CASE("validate_params accepts the families and rejects bad input") {
    const FamilyParams b = validate_params(-1.0, 3.0);
    CHECK(b.finite_support());
    CHECK(b.support_size() == 3);
    CHECK(b.domain_max() == doctest::Approx(1.0));

    const FamilyParams p = validate_params(0.0, 1.0);
    CHECK_FALSE(p.finite_support());
    CHECK(p.domain_max() == kInf);

    const FamilyParams half = validate_params(-0.5, 2.0); // l = 4
    CHECK(half.support_size() == 4);

    CHECK_THROWS_AS(validate_params(-1.0, 2.5), Error);  // -n/c = 2.5
    CHECK_THROWS_AS(validate_params(0.0, 0.0), Error);   // n <= 0
    CHECK_THROWS_AS(validate_params(1.0, -2.0), Error);  // n <= 0
    CHECK_THROWS_AS(validate_params(1.0, 1.0), Error);   // n <= c
    CHECK_THROWS_AS(validate_params(2.0, 1.5), Error);   // n <= c

    try {
        validate_params(-1.0, 2.5);
        FAIL("expected NonIntegerL");
    } catch (const Error& e) {
        CHECK(e.code() == errc::non_integer_l);
    }
}

TEST_CASE("log_basis matches the closed forms") {
    // binomial: 2 * 0.5 * 0.5
    CHECK(log_basis(validate_params(-1.0, 2.0), 1, 0.5) == doctest::Approx(std::log(0.5)));
    // Poisson k = 0: e^{-nx}
    CHECK(log_basis(validate_params(0.0, 1.0), 0, 1.0) == doctest::Approx(-1.0));
    // direct formula (-1)^1 C(-1,1) x (1+x)^{-2} at n = c = 1 (an internal,
    // paper-invalid corner that the formula still defines)
    const FamilyParams edge = FamilyParams::unchecked(1.0, 1.0, -1);
    CHECK(log_basis(edge, 1, 1.0) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
}

TEST_CASE("basis values and zero conventions") {
    CHECK(basis(validate_params(-1.0, 1.0), 0, 0.3) == doctest::Approx(0.7));
    CHECK(basis(validate_params(0.0, 2.0), 1, 0.5) == doctest::Approx(std::exp(-1.0)));
    CHECK(basis(validate_params(1.0, 2.0), 0, 1.0) == doctest::Approx(0.25));

    const FamilyParams b = validate_params(-1.0, 3.0);
    CHECK(basis(b, 4, 0.5) == 0.0);            // k > l is 0, not an error
    CHECK(log_basis(b, 4, 0.5) == -kInf);
    CHECK(basis(b, 1, 0.0) == 0.0);            // endpoint point mass
    CHECK(basis(b, 0, 0.0) == 1.0);
    CHECK(basis(b, 3, 1.0) == 1.0);
    CHECK(basis(b, 2, 1.0) == 0.0);

    CHECK_THROWS_AS(log_basis(b, 1, 1.5), Error);
    CHECK_THROWS_AS(log_basis(b, 1, -0.1), Error);
}

TEST_CASE("basis_derivative follows the shift recurrence") {
    // d/dx x = 1 for the (c=-1, n=1, k=1) basis
    for (double x : {0.1, 0.4, 0.9})
        CHECK(basis_derivative(validate_params(-1.0, 1.0), 1, x) == doctest::Approx(1.0));
    // d/dx e^{-x}
    CHECK(basis_derivative(validate_params(0.0, 1.0), 0, 1.0) ==
          doctest::Approx(-std::exp(-1.0)));
    CHECK_THROWS_AS(basis_derivative(validate_params(-1.0, 1.0), 0, 0.0), Error);
    CHECK_THROWS_AS(basis_derivative(validate_params(-1.0, 1.0), 0, 1.0), Error);
}

TEST_CASE("basis_derivative matches a central finite difference") {
    const FamilyParams p = validate_params(-1.0, 5.0);
    const double x = 0.3, h = 1e-3;
    // two-step Richardson of the symmetric difference
    const auto d = [&](double step) {
        return (basis(p, 2, x + step) - basis(p, 2, x - step)) / (2.0 * step);
    };
    const double fd = (4.0 * d(h / 2) - d(h)) / 3.0;
    CHECK(basis_derivative(p, 2, x) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("expectation: normalization, mean, second moment") {
    const TruncationPolicy policy;
    const auto one = [](long long) { return 1.0; };
    const auto identity = [](long long k) { return double(k); };
    const auto square = [](long long k) { return double(k) * double(k); };

    SUBCASE("sum of weights is 1") {
        const SeriesValue s = expectation(validate_params(0.0, 3.0), 2.0, one, policy, kOnes);
        CHECK(std::abs(s.value - 1.0) <= s.tail_bound + 1e-12);
    }
    SUBCASE("mean is nx") {
        const SeriesValue s = expectation(validate_params(0.0, 3.0), 2.0, identity, policy, kLinear);
        CHECK(std::abs(s.value - 6.0) <= s.tail_bound + 1e-10 * 7.0);
    }
    SUBCASE("binomial second moment npq + (np)^2") {
        const SeriesValue s =
            expectation(validate_params(-1.0, 2.0), 0.5, square, policy, kQuadratic);
        CHECK(s.value == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(s.tail_bound == 0.0); // finite support sums exactly
        CHECK(s.terms_used == 3);
    }
}

TEST_CASE("expectation certifies tails across the family matrix") {
    const TruncationPolicy policy;
    const auto one = [](long long) { return 1.0; };
    const auto identity = [](long long k) { return double(k); };

    for (double c : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
        for (double n : valid_n(c)) {
            const FamilyParams p = validate_params(c, n);
            const double hi = p.finite_support() ? p.domain_max() : 20.0;
            for (int i = 1; i <= 25; ++i) {
                const double x = hi * i / 26.0;
                const SeriesValue norm = expectation(p, x, one, policy, kOnes);
                CHECK(std::abs(norm.value - 1.0) <= norm.tail_bound + 1e-12);
                const SeriesValue mean = expectation(p, x, identity, policy, kLinear);
                CHECK(std::abs(mean.value - n * x) <= mean.tail_bound + 1e-10 * (1.0 + n * x));
            }
        }
    }
}

TEST_CASE("expectation raises MaxTermsExceeded under a starved budget") {
    TruncationPolicy strict;
    strict.abs_tol = 1e-14;
    strict.max_terms = 3;
    try {
        expectation(validate_params(0.0, 5.0), 4.0, [](long long) { return 1.0; }, strict, kOnes);
        FAIL("expected MaxTermsExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == errc::max_terms_exceeded);
    }
}

TEST_CASE("basis is nonnegative and normalized on sampled grids") {
    for (double c : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
        const std::vector<double> ns = valid_n(c);
        if (ns.empty()) continue;
        const FamilyParams p = validate_params(c, ns.front());
        const double hi = p.finite_support() ? p.domain_max() : 8.0;
        for (int i = 0; i <= 10; ++i) {
            const double x = hi * i / 10.0;
            for (long long k = 0; k <= 12; ++k) {
                const double v = basis(p, k, x);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("finite-support symmetry p_k(x) = p_{l-k}(-1/c - x)") {
    for (double c : {-1.0, -2.0, -0.5}) {
        const double n = -c * 6; // l = 6
        const FamilyParams p = validate_params(c, n);
        const long long l = p.support_size();
        const double hi = p.domain_max();
        for (double frac : {0.1, 0.37, 0.5, 0.81}) {
            const double x = hi * frac;
            for (long long k = 0; k <= l; ++k)
                CHECK(basis(p, k, x) ==
                      doctest::Approx(basis(p, l - k, hi - x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("rescaling identities map every family onto c = 1 or c = -1") {
    SUBCASE("c > 0") {
        const FamilyParams p = validate_params(2.0, 5.0);
        const FamilyParams ref = validate_params(1.0, 2.5);
        for (double x : {0.1, 0.5, 2.0})
            for (long long k : {0LL, 1LL, 3LL, 7LL})
                CHECK(basis(p, k, x) == doctest::Approx(basis(ref, k, 2.0 * x)).epsilon(1e-12));
    }
    SUBCASE("c < 0") {
        const FamilyParams p = validate_params(-2.0, 8.0); // l = 4
        const FamilyParams ref = validate_params(-1.0, 4.0);
        for (double x : {0.05, 0.2, 0.45})
            for (long long k = 0; k <= 4; ++k)
                CHECK(basis(p, k, x) == doctest::Approx(basis(ref, k, 2.0 * x)).epsilon(1e-12));
    }
}

TEST_CASE("small-c families stay close to the Poisson limit") {
    const FamilyParams near = validate_params(1e-6, 1.0);
    const FamilyParams poisson = validate_params(0.0, 1.0);
    for (double x : {0.2, 1.0, 3.0})
        for (long long k : {0LL, 1LL, 2LL, 5LL})
            CHECK(std::abs(basis(near, k, x) - basis(poisson, k, x)) <= 1e-4);
}

TEST_CASE("series values agree with the brute-force pmf oracles") {
    const TruncationPolicy policy;
    SUBCASE("binomial") {
        const auto pmf = oracles::binomial_pmf(7, 0.3L);
        const FamilyParams p = validate_params(-1.0, 7.0);
        for (long long k = 0; k <= 7; ++k)
            CHECK(basis(p, k, 0.3) == doctest::Approx(double(pmf[k])).epsilon(1e-13));
    }
    SUBCASE("Poisson") {
        const auto pmf = oracles::poisson_pmf(2.4L, 30);
        const FamilyParams p = validate_params(0.0, 1.2);
        for (long long k = 0; k < 20; ++k)
            CHECK(basis(p, k, 2.0) == doctest::Approx(double(pmf[k])).epsilon(1e-13));
    }
    SUBCASE("negative binomial") {
        const auto pmf = oracles::negbin_pmf(2.0L, 1.0L, 40);
        const FamilyParams p = validate_params(1.0, 2.0);
        for (long long k = 0; k < 30; ++k)
            CHECK(basis(p, k, 1.0) == doctest::Approx(double(pmf[k])).epsilon(1e-12));
    }
}
