#include "cfam/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "cfam/errors.hpp"

namespace cfam {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Interval {
    double a, b;
    double value;
    double error;

    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval evaluate(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kXgk[i]);
        fv[14 - i] = f(center + half * kXgk[i]);
    }
    fv[7] = f(center);

    double kronrod = kWgk[7] * fv[7];
    for (int i = 0; i < 7; ++i) kronrod += kWgk[i] * (fv[i] + fv[14 - i]);

    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    return {a, b, value, error};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || spec.max_subdivisions < 1)
        raise(errc::domain_violation, "quadrature spec needs abs_tol > 0, max_subdivisions >= 1");

    std::priority_queue<Interval> queue;
    queue.push(evaluate(f, a, b));
    double total_error = queue.top().error;
    double total_value = queue.top().value;
    int subdivisions = 1;

    const double min_width = 1e-14 * std::abs(b - a);
    while (total_error > spec.abs_tol) {
        if (subdivisions >= spec.max_subdivisions)
            raise(errc::tolerance_not_reached,
                  "subdivision budget exhausted, error estimate " + std::to_string(total_error));
        const Interval worst = queue.top();
        if (std::abs(worst.b - worst.a) <= min_width)
            raise(errc::tolerance_not_reached,
                  "interval cannot be refined further, error estimate " +
                      std::to_string(total_error));
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Interval left = evaluate(f, worst.a, mid);
        const Interval right = evaluate(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }
    return {total_value, total_error, subdivisions};
}

double log_weight_kernel(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return -t / std::log1p(-t);
}

} // namespace cfam
