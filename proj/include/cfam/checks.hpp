#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cfam/entropy.hpp"
#include "cfam/family.hpp"
#include "cfam/grid.hpp"

namespace cfam {

// One verified inequality instance. `order` identifies the sub-check (a
// derivative or difference order, or a small id where no order applies).
// `margin` is the signed slack of the asserted inequality, normalized per
// sub-check so that a suite passes iff every margin >= -tolerance.
struct Finding {
    double x = 0.0;
    int order = 0;
    double value = 0.0;
    double margin = 0.0;
};

struct CheckReport {
    std::string suite;
    std::string grid;
    double tolerance = 0.0;
    std::vector<Finding> findings;
    double worst_margin = 0.0;
    bool passed = false;
};

struct SuiteConfig {
    int grid_points = 0;  // 0 = per-family default (99 interior for c<0, 60 geometric otherwise)
    double tol = 1e-7;    // relative sign tolerance
    TruncationPolicy series{};
    ExecPolicy exec{};
    bool quick = false;
    // Test hook: negate the even-derivative margins of the c<0 sign checker
    // so the suite (and CLI exit code) must flip to failure.
    bool inject_sign_bug = false;
};

// Default evaluation grid for a family: equispaced interior points of
// (0, -1/c) for c < 0, a geometric grid on [0.05, 20] otherwise.
std::vector<double> default_grid(const FamilyParams& p, int points);

// Complete-monotonicity test via alternating forward differences:
// (-1)^m D_h^m f(x) >= 0 for all m <= max_order and every base point whose
// stencil stays inside [lo, hi]. Margins are normalized by the per-order
// magnitude scale max_x |D_h^m f|.
CheckReport cm_check(const std::function<double(double)>& f, double lo, double hi,
                     int grid_points, double h, int max_order, double tol,
                     const ExecPolicy& exec = {}, const std::string& suite_name = "cm");

// c < 0: even derivatives of H are <= 0 on (0, -1/c); odd derivatives are
// >= 0 left of -1/(2c), <= 0 right of it, and vanish there. Orders checked:
// 1 .. 2*max_k+2.
CheckReport theorem1_sign_check(const FamilyParams& p, int max_k, const SuiteConfig& cfg = {});

// c >= 0 sandwich: log(x/(cx+1)) <= sum_k p_{n+c,k}(x) log((k+1)/(ck+n))
//                <= log((nx+1)/(ncx+n)). Margins are absolute.
CheckReport corollary1_check(const FamilyParams& p, const SuiteConfig& cfg = {});

// S convexity (all c), T concavity (all c); for c < 0 the decrease/increase
// split of S at -1/(2c) and the grid-argmin location; for c >= 0 complete
// monotonicity of S and of the first differences of T, plus R increasing
// and concave.
CheckReport section3_suite(const FamilyParams& p, const SuiteConfig& cfg = {});

// Report-only scan of the second divided differences of log S for c < 0.
// Never fails: worst_margin carries the minimum observed value and the
// tolerance is infinite.
CheckReport conjecture33_scan(const FamilyParams& p, const SuiteConfig& cfg = {});

// Cross-checks every integral representation against its series counterpart
// on a fixed parameter matrix, and the quadrature engine against the beta
// identity closed form.
CheckReport representations_check(const SuiteConfig& cfg = {});

// Complete monotonicity of H' for c = 0 / c > 0 over [0.1, 10], both
// h in {0.05, 0.1}, difference orders to `max_order`.
CheckReport entropy_prime_cm_check(const FamilyParams& p, int max_order,
                                   const SuiteConfig& cfg = {});

} // namespace cfam
