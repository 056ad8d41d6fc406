#include "cfam/grid.hpp"

#include <cmath>

namespace cfam {

std::vector<double> make_grid(const GridSpec& spec) {
    if (!(spec.min < spec.max) || spec.points < 2)
        raise(errc::domain_violation, "grid needs min < max and points >= 2");
    if (spec.spacing == Spacing::geometric && !(spec.min > 0.0))
        raise(errc::domain_violation, "geometric grid needs min > 0");

    std::vector<double> xs(spec.points);
    const int last = spec.points - 1;
    if (spec.spacing == Spacing::linear) {
        const double step = (spec.max - spec.min) / last;
        for (int i = 0; i <= last; ++i) xs[i] = spec.min + i * step;
    } else {
        const double ratio = std::log(spec.max / spec.min) / last;
        for (int i = 0; i <= last; ++i) xs[i] = spec.min * std::exp(i * ratio);
    }
    xs[last] = spec.max;
    return xs;
}

std::vector<double> make_interior_grid(double lo, double hi, int points) {
    if (!(lo < hi) || points < 1)
        raise(errc::domain_violation, "interior grid needs lo < hi and points >= 1");
    std::vector<double> xs(points);
    const double step = (hi - lo) / (points + 1);
    for (int i = 1; i <= points; ++i) xs[i - 1] = lo + i * step;
    return xs;
}

} // namespace cfam
