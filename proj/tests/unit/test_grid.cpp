#include <doctest.h>

#include <cmath>
#include <cstring>

#include "cfam/checks.hpp"
#include "cfam/grid.hpp"

using namespace cfam;

namespace {

bool bit_identical(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

} // namespace

TEST_CASE("make_grid produces ordered grids with exact endpoints") {
    const auto lin = make_grid({0.0, 1.0, 11, Spacing::linear});
    CHECK(lin.size() == 11);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 1.0);
    CHECK(lin[5] == doctest::Approx(0.5));

    const auto geo = make_grid({0.05, 20.0, 60, Spacing::geometric});
    CHECK(geo.size() == 60);
    CHECK(geo.front() == 0.05);
    CHECK(geo.back() == 20.0);
    // constant ratio
    const double ratio = geo[1] / geo[0];
    for (std::size_t i = 1; i + 1 < geo.size(); ++i)
        CHECK(geo[i + 1] / geo[i] == doctest::Approx(ratio).epsilon(1e-9));

    CHECK_THROWS_AS(make_grid({1.0, 0.0, 10, Spacing::linear}), Error);
    CHECK_THROWS_AS(make_grid({0.0, 1.0, 1, Spacing::linear}), Error);
    CHECK_THROWS_AS(make_grid({0.0, 1.0, 10, Spacing::geometric}), Error);
}

TEST_CASE("interior grids exclude their endpoints") {
    const auto xs = make_interior_grid(0.0, 1.0, 99);
    CHECK(xs.size() == 99);
    CHECK(xs.front() == doctest::Approx(0.01));
    CHECK(xs.back() == doctest::Approx(0.99));
    CHECK(xs.front() > 0.0);
    CHECK(xs.back() < 1.0);
}

TEST_CASE("parallel map matches the serial reference bit for bit") {
    const ExecPolicy serial{false};
    const ExecPolicy parallel{true};
    const auto work = [](std::size_t i) {
        double acc = 0.0;
        for (int k = 1; k <= 50; ++k) acc += std::sin(double(i) / k) / k;
        return acc;
    };
    const auto a = map_indexed<double>(4096, serial, work);
    const auto b = map_indexed<double>(4096, parallel, work);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(bit_identical(a[i], b[i]));
}

TEST_CASE("exceptions from parallel workers propagate") {
    const ExecPolicy parallel{true};
    CHECK_THROWS_AS(map_indexed<double>(64, parallel,
                                        [](std::size_t i) -> double {
                                            if (i == 13) raise(errc::domain_violation, "boom");
                                            return double(i);
                                        }),
                    Error);
}

TEST_CASE("suite reports are identical under serial and parallel execution") {
    SuiteConfig serial_cfg;
    serial_cfg.exec.parallel = false;
    SuiteConfig parallel_cfg;
    parallel_cfg.exec.parallel = true;

    const FamilyParams p = validate_params(-1.0, 5.0);
    const CheckReport a = theorem1_sign_check(p, 2, serial_cfg);
    const CheckReport b = theorem1_sign_check(p, 2, parallel_cfg);
    REQUIRE(a.findings.size() == b.findings.size());
    for (std::size_t i = 0; i < a.findings.size(); ++i) {
        CHECK(bit_identical(a.findings[i].x, b.findings[i].x));
        CHECK(a.findings[i].order == b.findings[i].order);
        CHECK(bit_identical(a.findings[i].value, b.findings[i].value));
        CHECK(bit_identical(a.findings[i].margin, b.findings[i].margin));
    }
    CHECK(bit_identical(a.worst_margin, b.worst_margin));

    const CheckReport c = section3_suite(validate_params(0.0, 1.0), serial_cfg);
    const CheckReport d = section3_suite(validate_params(0.0, 1.0), parallel_cfg);
    REQUIRE(c.findings.size() == d.findings.size());
    for (std::size_t i = 0; i < c.findings.size(); ++i)
        CHECK(bit_identical(c.findings[i].value, d.findings[i].value));
}
