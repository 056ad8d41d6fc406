#include <doctest.h>

#include <cmath>

#include "cfam/derivative.hpp"
#include "cfam/entropy.hpp"
#include "cfam/representations.hpp"

using namespace cfam;

TEST_CASE("log factorial: both integral forms match lgamma") {
    for (auto form : {LogFactorialForm::exponential, LogFactorialForm::logarithmic}) {
        CHECK(log_factorial_integral(1, form).value == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(log_factorial_integral(5, form).value ==
              doctest::Approx(4.787491742782046).epsilon(1e-11));
        CHECK(log_factorial_integral(20, form).value ==
              doctest::Approx(42.335616460753485).epsilon(1e-11));
        for (long long l = 1; l <= 20; ++l) {
            const QuadratureResult r = log_factorial_integral(l, form);
            CHECK(std::abs(r.value - std::lgamma(double(l) + 1.0)) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(log_factorial_integral(0, LogFactorialForm::exponential), Error);
}

TEST_CASE("finite-support entropy representation") {
    // l = 1 collapses to the binary entropy closed form
    const FamilyParams binary = validate_params(-1.0, 1.0);
    CHECK(shannon_binomial_integral(binary, 0.5).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-11));
    CHECK(shannon_binomial_integral(binary, 0.2).value ==
          doctest::Approx(shannon(binary, 0.2).value).epsilon(1e-10));

    const FamilyParams p6 = validate_params(-1.0, 6.0);
    CHECK(std::abs(shannon_binomial_integral(p6, 0.3).value - shannon(p6, 0.3).value) <= 1e-8);

    // c = -2 maps onto the l = 2 family at -cx by rescaling
    const FamilyParams p2 = validate_params(-2.0, 4.0);
    const FamilyParams ref = validate_params(-1.0, 2.0);
    CHECK(std::abs(shannon_binomial_integral(p2, 0.2).value - shannon(ref, 0.4).value) <= 1e-8);

    CHECK_THROWS_AS(shannon_binomial_integral(validate_params(0.0, 1.0), 0.5), Error);
    CHECK_THROWS_AS(shannon_binomial_integral(p6, 0.0), Error);
}

TEST_CASE("Poisson entropy representation") {
    CHECK(shannon_poisson_integral(1.0).value ==
          doctest::Approx(1.3048422422562515).epsilon(1e-11));
    // vanishing limit: H(x) ~ x(1 - log x) as x -> 0+
    const double x_small = 1e-4;
    const double h_small = shannon_poisson_integral(x_small).value;
    CHECK(std::abs(h_small) <= 1.1e-3);
    CHECK(h_small == doctest::Approx(x_small * (1.0 - std::log(x_small))).epsilon(1e-4));

    const FamilyParams p = validate_params(0.0, 1.0);
    for (double x : {0.5, 1.0, 5.0})
        CHECK(std::abs(shannon_poisson_integral(x).value - shannon(p, x).value) <= 1e-8);
    CHECK_THROWS_AS(shannon_poisson_integral(0.0), Error);
}

TEST_CASE("Poisson derivative representation vs the exact engine") {
    const FamilyParams p = validate_params(0.0, 1.0);
    CHECK(std::abs(poisson_derivative_integral(1, 1.0).value -
                   shannon_derivative_exact(p, 1.0, 2)) <= 1e-7);

    // k = 3 against a finite difference of H'
    TruncationPolicy tight;
    tight.abs_tol = 1e-15;
    FdPolicy fd;
    fd.domain_lo = 0.0;
    const auto hp = [&](double y) { return shannon_prime(p, y, tight); };
    const FdResult r = finite_difference_derivative(hp, 2.0, 3, fd);
    CHECK(std::abs(poisson_derivative_integral(3, 2.0).value - r.value) <= 1e-6);

    // complete monotonicity sign: (-1)^k H^{(k+1)} >= 0
    for (int k = 1; k <= 4; ++k)
        for (double x : {0.3, 1.0, 3.0}) {
            const double v = poisson_derivative_integral(k, x).value;
            CHECK((k % 2 == 0 ? v : -v) >= 0.0);
        }
}

TEST_CASE("negative binomial entropy and derivative representations") {
    const FamilyParams p2 = validate_params(1.0, 2.0);
    CHECK(std::abs(shannon_negbin_integral(2.0, 1.0).value - shannon(p2, 1.0).value) <= 1e-8);
    const FamilyParams p3 = validate_params(1.0, 3.0);
    for (double x : {0.5, 2.0})
        CHECK(std::abs(shannon_negbin_integral(3.0, x).value - shannon(p3, x).value) <= 1e-8);

    CHECK(std::abs(negbin_derivative_integral(2.0, 1, 1.0).value -
                   shannon_derivative_exact(p2, 1.0, 2)) <= 1e-7);

    // alternating sign: (-1)^{j-1} H^{(j+1)} <= 0
    for (int j = 1; j <= 3; ++j) {
        const double v = negbin_derivative_integral(3.0, j, 0.5).value;
        CHECK((j % 2 == 1 ? v : -v) <= 0.0);
    }

    CHECK_THROWS_AS(shannon_negbin_integral(1.0, 1.0), Error);  // needs n > 1
    CHECK_THROWS_AS(negbin_derivative_integral(2.0, 0, 1.0), Error);
}

TEST_CASE("finite-support even-derivative representation") {
    const FamilyParams p6 = validate_params(-1.0, 6.0);
    for (int k : {0, 1})
        for (double x : {0.3, 0.5})
            CHECK(std::abs(binomial_derivative_integral(p6, k, x).value -
                           shannon_derivative_exact(p6, x, 2 * k + 2)) <= 1e-7);

    // support too small for the requested order
    const FamilyParams p2 = validate_params(-1.0, 2.0);
    CHECK_THROWS_AS(binomial_derivative_integral(p2, 1, 0.5), Error);
}

TEST_CASE("beta identity fixture validates the quadrature engine") {
    CHECK(beta_identity_fixture(1, 1.0, 1.0).value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(beta_identity_fixture(2, 1.0, 0.0).value ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(beta_identity_fixture(3, 2.0, 2.0).value ==
          doctest::Approx(1.0 / 810.0).epsilon(1e-10));
    CHECK(beta_identity_closed_form(3, 2.0, 2.0) == doctest::Approx(1.0 / 810.0).epsilon(1e-15));

    for (int j : {1, 2, 3})
        for (double n : {1.0, 2.0})
            for (double x : {0.5, 1.0, 2.0})
                CHECK(std::abs(beta_identity_fixture(j, n, x).value -
                               beta_identity_closed_form(j, n, x)) <= 1e-10);
}
