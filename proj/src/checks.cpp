#include "cfam/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cfam/derivative.hpp"
#include "cfam/representations.hpp"

namespace cfam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMidpointTol = 1e-8; // |H^(odd)(-1/(2c))| <= this, relative to grid scale

std::string describe_grid(const std::vector<double>& xs) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "[%g, %g] points=%zu", xs.front(), xs.back(), xs.size());
    return buf;
}

void finalize(CheckReport& report) {
    double worst = kInf;
    for (const Finding& f : report.findings) worst = std::min(worst, f.margin);
    if (report.findings.empty()) worst = 0.0;
    report.worst_margin = worst;
    report.passed = worst >= -report.tolerance;
}

double safe_scale(double scale) { return std::max(scale, 1e-300); }

// twice the second divided difference over (x0,x1,x2); approximates f'' and
// keeps its sign on arbitrary (also geometric) grids.
double second_divided_difference(double x0, double x1, double x2, double f0, double f1,
                                 double f2) {
    return 2.0 * ((f2 - f1) / (x2 - x1) - (f1 - f0) / (x1 - x0)) / (x2 - x0);
}

} // namespace

std::vector<double> default_grid(const FamilyParams& p, int points) {
    if (p.finite_support())
        return make_interior_grid(0.0, p.domain_max(), points > 0 ? points : 99);
    return make_grid({0.05, 20.0, points > 0 ? points : 60, Spacing::geometric});
}

CheckReport cm_check(const std::function<double(double)>& f, double lo, double hi,
                     int grid_points, double h, int max_order, double tol,
                     const ExecPolicy& exec, const std::string& suite_name) {
    if (!(h > 0.0) || max_order < 1 || grid_points < 2)
        raise(errc::domain_violation, "cm_check needs h > 0, max_order >= 1, grid_points >= 2");
    const double base_hi = hi - max_order * h;
    if (!(base_hi > lo))
        raise(errc::grid_too_coarse, "interval shorter than the widest difference stencil");

    std::vector<double> base(grid_points);
    const double step = (base_hi - lo) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) base[i] = lo + i * step;

    // per base point: (-1)^m D_h^m f for m = 0..max_order
    const auto rows = map_indexed<std::vector<double>>(
        base.size(), exec, [&](std::size_t g) {
            std::vector<double> vals(max_order + 1);
            for (int i = 0; i <= max_order; ++i) vals[i] = f(base[g] + i * h);
            std::vector<double> signed_diffs(max_order + 1);
            signed_diffs[0] = vals[0];
            for (int m = 1; m <= max_order; ++m) {
                for (int i = 0; i + m <= max_order; ++i) vals[i] = vals[i + 1] - vals[i];
                signed_diffs[m] = (m % 2 == 0) ? vals[0] : -vals[0];
            }
            return signed_diffs;
        });

    CheckReport report;
    report.suite = suite_name;
    report.grid = describe_grid(base);
    report.tolerance = tol;
    for (int m = 0; m <= max_order; ++m) {
        double scale = 0.0;
        for (const auto& row : rows) scale = std::max(scale, std::abs(row[m]));
        scale = safe_scale(scale);
        for (std::size_t g = 0; g < rows.size(); ++g)
            report.findings.push_back({base[g], m, rows[g][m], rows[g][m] / scale});
    }
    finalize(report);
    return report;
}

CheckReport theorem1_sign_check(const FamilyParams& p, int max_k, const SuiteConfig& cfg) {
    if (!p.finite_support() || p.support_size() < 1)
        raise(errc::domain_violation, "theorem1 sign pattern applies to c < 0 only");
    if (max_k < 0) raise(errc::domain_violation, "max_k must be >= 0");

    const std::vector<double> xs = default_grid(p, cfg.grid_points);
    const double x_mid = -1.0 / (2.0 * p.c());
    const int top_order = 2 * max_k + 2;

    const auto rows = map_indexed<std::vector<double>>(xs.size(), cfg.exec, [&](std::size_t i) {
        std::vector<double> d(top_order + 1);
        for (int m = 1; m <= top_order; ++m)
            d[m] = shannon_derivative_exact(p, xs[i], m, cfg.series);
        return d;
    });

    CheckReport report;
    report.suite = "theorem1";
    report.grid = describe_grid(xs);
    report.tolerance = cfg.tol;

    for (int m = 1; m <= top_order; ++m) {
        double scale = 0.0;
        for (const auto& row : rows) scale = std::max(scale, std::abs(row[m]));
        scale = safe_scale(scale);

        if (m % 2 == 0) {
            // even orders: H^(m) <= 0 on the whole open interval
            for (std::size_t i = 0; i < xs.size(); ++i) {
                double margin = -rows[i][m] / scale;
                if (cfg.inject_sign_bug) margin = -margin;
                report.findings.push_back({xs[i], m, rows[i][m], margin});
            }
        } else {
            // odd orders: >= 0 left of -1/(2c), <= 0 right of it
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double side = xs[i] <= x_mid ? 1.0 : -1.0;
                report.findings.push_back({xs[i], m, rows[i][m], side * rows[i][m] / scale});
            }
            // and they vanish at the symmetry point
            const double v0 = shannon_derivative_exact(p, x_mid, m, cfg.series);
            report.findings.push_back(
                {x_mid, m, v0, 1.0 - std::abs(v0) / (kMidpointTol * scale)});
        }
    }
    finalize(report);
    return report;
}

CheckReport corollary1_check(const FamilyParams& p, const SuiteConfig& cfg) {
    if (p.finite_support())
        raise(errc::domain_violation, "the sandwich inequality applies to c >= 0 only");

    const std::vector<double> xs = default_grid(p, cfg.grid_points);
    const double c = p.c();
    const double n = p.n();
    const FamilyParams up = p.shifted(1);
    const GrowthEnvelope env{std::abs(std::log(n)) + n, 1.0 + c, 0.0};

    struct Row {
        double mid, lower, upper;
    };
    const auto rows = map_indexed<Row>(xs.size(), cfg.exec, [&](std::size_t i) {
        const double x = xs[i];
        const SeriesValue mid = expectation(
            up, x,
            [&](long long k) { return std::log(double(k) + 1.0) - std::log(n + c * double(k)); },
            cfg.series, env);
        const double lower = std::log(x) - std::log1p(c * x);
        const double upper = std::log1p(n * x) - std::log(n) - std::log1p(c * x);
        return Row{mid.value, lower, upper};
    });

    CheckReport report;
    report.suite = "corollary1";
    report.grid = describe_grid(xs);
    report.tolerance = cfg.tol;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        report.findings.push_back({xs[i], 0, rows[i].mid, rows[i].mid - rows[i].lower});
        report.findings.push_back({xs[i], 1, rows[i].mid, rows[i].upper - rows[i].mid});
    }
    finalize(report);
    return report;
}

namespace {

// Finding `order` ids used by section3_suite:
//   2: second divided difference of S (>= 0)     3: of T (<= 0)
//   4: first difference of R (>= 0)              5: second divided difference of R (<= 0)
//   6: first-difference sign of S around -1/(2c) 7: grid argmin of S at the point nearest it
//   100+m / 200+m: complete monotonicity of S / of the first differences of T
void append_sign_findings(CheckReport& report, const std::vector<double>& xs,
                          const std::vector<double>& vals, int id, double sign) {
    double scale = 0.0;
    for (double v : vals) scale = std::max(scale, std::abs(v));
    scale = safe_scale(scale);
    for (std::size_t i = 0; i < vals.size(); ++i)
        report.findings.push_back({xs[i], id, vals[i], sign * vals[i] / scale});
}

std::vector<double> second_differences(const std::vector<double>& xs,
                                       const std::vector<double>& f) {
    std::vector<double> out(xs.size() - 2);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i)
        out[i - 1] = second_divided_difference(xs[i - 1], xs[i], xs[i + 1], f[i - 1], f[i],
                                               f[i + 1]);
    return out;
}

} // namespace

CheckReport section3_suite(const FamilyParams& p, const SuiteConfig& cfg) {
    const std::vector<double> xs = default_grid(p, cfg.grid_points);
    const bool nonneg_c = !p.finite_support();

    struct Row {
        double s, t, r;
    };
    const auto rows = map_indexed<Row>(xs.size(), cfg.exec, [&](std::size_t i) {
        const EntropyValue s = sum_squares(p, xs[i], cfg.series);
        Row row{s.value, 1.0 - s.value, 0.0};
        if (!p.finite_support()) row.r = -std::log(s.value);
        return row;
    });

    std::vector<double> s_vals(xs.size()), t_vals(xs.size()), r_vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s_vals[i] = rows[i].s;
        t_vals[i] = rows[i].t;
        r_vals[i] = rows[i].r;
    }

    CheckReport report;
    report.suite = "section3";
    report.grid = describe_grid(xs);
    report.tolerance = cfg.tol;

    const std::vector<double> mids(xs.begin() + 1, xs.end() - 1);
    append_sign_findings(report, mids, second_differences(xs, s_vals), 2, +1.0); // S convex
    append_sign_findings(report, mids, second_differences(xs, t_vals), 3, -1.0); // T concave

    if (nonneg_c) {
        std::vector<double> r_first(xs.size() - 1);
        std::vector<double> pair_x(xs.size() - 1);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            r_first[i] = r_vals[i + 1] - r_vals[i];
            pair_x[i] = xs[i];
        }
        append_sign_findings(report, pair_x, r_first, 4, +1.0);                      // R increasing
        append_sign_findings(report, mids, second_differences(xs, r_vals), 5, -1.0); // R concave

        // complete monotonicity of S, and of T' via first differences of T
        const int cm_orders = cfg.quick ? 6 : 8;
        const int cm_points = cfg.quick ? 12 : 25;
        const double h = 0.1;
        const auto s_fn = [&](double x) { return sum_squares(p, x, cfg.series).value; };
        CheckReport cm_s = cm_check(s_fn, 0.1, 10.0, cm_points, h, cm_orders, cfg.tol, cfg.exec);
        for (Finding f : cm_s.findings) {
            f.order += 100;
            report.findings.push_back(f);
        }
        const auto dt_fn = [&](double x) {
            return (tsallis2(p, x + h, cfg.series).value - tsallis2(p, x, cfg.series).value) / h;
        };
        CheckReport cm_dt =
            cm_check(dt_fn, 0.1, 10.0 - h, cm_points, h, cm_orders - 1, cfg.tol, cfg.exec);
        for (Finding f : cm_dt.findings) {
            f.order += 200;
            report.findings.push_back(f);
        }
    } else {
        // S decreasing left of -1/(2c), increasing right of it
        const double x_mid = -1.0 / (2.0 * p.c());
        double scale = 0.0;
        std::vector<double> s_first(xs.size() - 1);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            s_first[i] = s_vals[i + 1] - s_vals[i];
            scale = std::max(scale, std::abs(s_first[i]));
        }
        scale = safe_scale(scale);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (xs[i + 1] <= x_mid)
                report.findings.push_back({xs[i], 6, s_first[i], -s_first[i] / scale});
            else if (xs[i] >= x_mid)
                report.findings.push_back({xs[i], 6, s_first[i], s_first[i] / scale});
        }

        std::size_t argmin = 0, nearest = 0;
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (s_vals[i] < s_vals[argmin]) argmin = i;
            if (std::abs(xs[i] - x_mid) < std::abs(xs[nearest] - x_mid)) nearest = i;
        }
        report.findings.push_back(
            {xs[argmin], 7, s_vals[argmin], argmin == nearest ? 1.0 : -1.0});
    }

    finalize(report);
    return report;
}

CheckReport conjecture33_scan(const FamilyParams& p, const SuiteConfig& cfg) {
    if (!p.finite_support() || p.support_size() < 1)
        raise(errc::domain_violation, "the open log-convexity question concerns c < 0 only");

    const std::vector<double> xs =
        make_interior_grid(0.0, p.domain_max(), cfg.grid_points > 0 ? cfg.grid_points : 199);

    const auto log_s = map_indexed<double>(xs.size(), cfg.exec, [&](std::size_t i) {
        return std::log(sum_squares(p, xs[i], cfg.series).value);
    });

    CheckReport report;
    report.suite = "conjecture33";
    report.grid = describe_grid(xs);
    report.tolerance = kInf; // report-only: findings are data, never failures

    for (std::size_t i = 0; i < xs.size(); ++i)
        report.findings.push_back({xs[i], 0, log_s[i], 0.0});

    double worst = kInf;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double d2 = second_divided_difference(xs[i - 1], xs[i], xs[i + 1], log_s[i - 1],
                                                    log_s[i], log_s[i + 1]);
        report.findings.push_back({xs[i], 2, d2, d2});
        worst = std::min(worst, d2);
    }
    report.worst_margin = worst;
    report.passed = true;
    return report;
}

CheckReport entropy_prime_cm_check(const FamilyParams& p, int max_order, const SuiteConfig& cfg) {
    if (p.finite_support())
        raise(errc::domain_violation, "complete monotonicity of H' applies to c >= 0 only");

    const auto hp = [&](double x) { return shannon_prime(p, x, cfg.series); };
    const int points = cfg.quick ? 12 : 20;

    CheckReport report;
    report.suite = p.c() == 0.0 ? "theorem2" : "theorem3";
    report.tolerance = cfg.tol;
    for (double h : {0.05, 0.1}) {
        CheckReport part = cm_check(hp, 0.1, 10.0, points, h, max_order, cfg.tol, cfg.exec);
        if (report.grid.empty()) report.grid = part.grid;
        for (const Finding& f : part.findings) report.findings.push_back(f);
        if (cfg.quick) break;
    }
    finalize(report);
    return report;
}

namespace {

struct RepItem {
    double x;     // abscissa or l
    int category; // 1/2: log l! forms; 3-5: H representations; 6-8: derivative
                  // representations; 9: beta identity
    double eps;
    std::function<double()> diff; // representation minus reference
};

} // namespace

CheckReport representations_check(const SuiteConfig& cfg) {
    std::vector<RepItem> items;
    const TruncationPolicy series = cfg.series;
    const QuadratureSpec quad{};

    // log(l!) against lgamma, both forms
    const std::vector<long long> ls = cfg.quick ? std::vector<long long>{1, 5, 20}
                                                : std::vector<long long>{1, 2, 3, 5, 10, 20};
    for (long long l : ls) {
        items.push_back({double(l), 1, 1e-9, [l, quad] {
                             return log_factorial_integral(l, LogFactorialForm::exponential, quad)
                                        .value -
                                    std::lgamma(double(l) + 1.0);
                         }});
        items.push_back({double(l), 2, 1e-9, [l, quad] {
                             return log_factorial_integral(l, LogFactorialForm::logarithmic, quad)
                                        .value -
                                    std::lgamma(double(l) + 1.0);
                         }});
    }

    // c < 0 entropy representation vs series
    struct BinCase {
        double c, n;
        std::vector<double> xs;
    };
    const std::vector<BinCase> bin_cases =
        cfg.quick ? std::vector<BinCase>{{-1.0, 6.0, {0.3}}, {-2.0, 8.0, {0.2}}}
                  : std::vector<BinCase>{{-1.0, 1.0, {0.5}},
                                         {-1.0, 6.0, {0.2, 0.5, 0.8}},
                                         {-2.0, 8.0, {0.1, 0.25, 0.4}}};
    for (const BinCase& bc : bin_cases) {
        const FamilyParams fp = FamilyParams::validated(bc.c, bc.n);
        for (double x : bc.xs)
            items.push_back({x, 3, 1e-8, [fp, x, quad, series] {
                                 return shannon_binomial_integral(fp, x, quad).value -
                                        shannon(fp, x, series).value;
                             }});
    }

    // c = 0 entropy representation vs series (n = 1 directly, n = 2 via scaling)
    for (double x : cfg.quick ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 5.0}) {
        const FamilyParams fp = FamilyParams::validated(0.0, 1.0);
        items.push_back({x, 4, 1e-8, [fp, x, quad, series] {
                             return shannon_poisson_integral(x, quad).value -
                                    shannon(fp, x, series).value;
                         }});
    }
    if (!cfg.quick) {
        const FamilyParams fp2 = FamilyParams::validated(0.0, 2.0);
        for (double x : {0.5, 2.0})
            items.push_back({x, 4, 1e-8, [fp2, x, quad, series] {
                                 return shannon_poisson_integral(2.0 * x, quad).value -
                                        shannon(fp2, x, series).value;
                             }});
    }

    // c = 1 entropy representation vs series
    for (double n : cfg.quick ? std::vector<double>{2.0} : std::vector<double>{2.0, 3.0}) {
        const FamilyParams fp = FamilyParams::validated(1.0, n);
        for (double x : cfg.quick ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 2.0})
            items.push_back({x, 5, 1e-8, [fp, n, x, quad, series] {
                                 return shannon_negbin_integral(n, x, quad).value -
                                        shannon(fp, x, series).value;
                             }});
    }

    // derivative representations vs the exact engine
    {
        const FamilyParams fp = FamilyParams::validated(0.0, 1.0);
        for (int k : cfg.quick ? std::vector<int>{1, 3} : std::vector<int>{1, 2, 3})
            for (double x : cfg.quick ? std::vector<double>{1.0}
                                      : std::vector<double>{0.5, 1.0, 2.0})
                items.push_back({x, 6, 1e-7, [fp, k, x, quad, series] {
                                     return poisson_derivative_integral(k, x, quad).value -
                                            shannon_derivative_exact(fp, x, k + 1, series);
                                 }});
    }
    for (double n : cfg.quick ? std::vector<double>{2.0} : std::vector<double>{2.0, 3.0}) {
        const FamilyParams fp = FamilyParams::validated(1.0, n);
        for (int j : cfg.quick ? std::vector<int>{1, 2} : std::vector<int>{1, 2, 3})
            for (double x : cfg.quick ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0})
                items.push_back({x, 7, 1e-7, [fp, n, j, x, quad, series] {
                                     return negbin_derivative_integral(n, j, x, quad).value -
                                            shannon_derivative_exact(fp, x, j + 1, series);
                                 }});
    }
    {
        const FamilyParams f6 = FamilyParams::validated(-1.0, 6.0);
        const FamilyParams f4 = FamilyParams::validated(-2.0, 8.0);
        for (int k : {0, 1}) {
            for (double x : cfg.quick ? std::vector<double>{0.5} : std::vector<double>{0.3, 0.5})
                items.push_back({x, 8, 1e-7, [f6, k, x, quad, series] {
                                     return binomial_derivative_integral(f6, k, x, quad).value -
                                            shannon_derivative_exact(f6, x, 2 * k + 2, series);
                                 }});
            if (!cfg.quick)
                items.push_back({0.2, 8, 1e-7, [f4, k, quad, series] {
                                     return binomial_derivative_integral(f4, k, 0.2, quad).value -
                                            shannon_derivative_exact(f4, 0.2, 2 * k + 2, series);
                                 }});
        }
    }

    // quadrature engine fixture
    const std::vector<std::array<double, 3>> beta_cases = [&] {
        std::vector<std::array<double, 3>> out;
        if (cfg.quick) {
            out.push_back({1.0, 1.0, 1.0});
            out.push_back({3.0, 2.0, 2.0});
            return out;
        }
        for (int j : {1, 2, 3})
            for (double n : {1.0, 2.0})
                for (double x : {0.5, 1.0, 2.0}) out.push_back({double(j), n, x});
        return out;
    }();
    for (const auto& bc : beta_cases)
        items.push_back({bc[2], 9, 1e-10, [bc, quad] {
                             const int j = int(bc[0]);
                             return beta_identity_fixture(j, bc[1], bc[2], quad).value -
                                    beta_identity_closed_form(j, bc[1], bc[2]);
                         }});

    const auto diffs = map_indexed<double>(items.size(), cfg.exec,
                                           [&](std::size_t i) { return items[i].diff(); });

    CheckReport report;
    report.suite = "representations";
    report.grid = "fixed cross-check matrix";
    report.tolerance = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double margin = (items[i].eps - std::abs(diffs[i])) / items[i].eps;
        report.findings.push_back({items[i].x, items[i].category, diffs[i], margin});
    }
    finalize(report);
    return report;
}

} // namespace cfam
