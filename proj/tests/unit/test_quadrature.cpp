#include <doctest.h>

#include <cmath>

#include "cfam/errors.hpp"
#include "cfam/quadrature.hpp"

using namespace cfam;

TEST_CASE("integrate nails smooth closed forms") {
    const QuadratureSpec spec;
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, spec).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, spec).value ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, spec).value ==
          doctest::Approx(2.0).epsilon(1e-13));

    const QuadratureResult r = integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, spec);
    CHECK(r.value == doctest::Approx(M_PI / 4.0).epsilon(1e-13));
    CHECK(r.error_estimate <= spec.abs_tol);
    CHECK(r.subdivisions_used >= 1);
}

TEST_CASE("integrate concentrates effort near an integrable endpoint") {
    // 1/sqrt(x) is integrable but needs many bisections near 0
    QuadratureSpec spec;
    spec.abs_tol = 1e-8;
    const QuadratureResult r =
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(r.subdivisions_used > 10);
}

TEST_CASE("integrate reports an exhausted budget") {
    QuadratureSpec starved;
    starved.abs_tol = 1e-13;
    starved.max_subdivisions = 3;
    try {
        integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, starved);
        FAIL("expected ToleranceNotReached");
    } catch (const Error& e) {
        CHECK(e.code() == errc::tolerance_not_reached);
    }
}

TEST_CASE("log weight kernel stays inside (0,1) and hits its limits") {
    CHECK(log_weight_kernel(0.0) == 1.0);
    CHECK(log_weight_kernel(1.0) == 0.0);
    for (int i = 1; i < 1000; ++i) {
        const double t = i / 1000.0;
        const double k = log_weight_kernel(t);
        CHECK(k > 0.0);
        CHECK(k < 1.0);
    }
    // extreme-but-interior points
    CHECK(log_weight_kernel(1e-300) > 0.999);
    CHECK(log_weight_kernel(1.0 - 1e-14) > 0.0);
}
