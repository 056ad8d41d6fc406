// Times the OpenMP grid kernels against the serial reference path and
// verifies that both produce identical output.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cfam/checks.hpp"
#include "cfam/derivative.hpp"
#include "cfam/entropy.hpp"
#include "cfam/grid.hpp"

using namespace cfam;

namespace {

struct Task {
    std::string name;
    std::size_t count;
    std::function<double(std::size_t)> fn;
};

double time_run(const Task& task, const ExecPolicy& exec, int repeats,
                std::vector<double>& out) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        out = map_indexed<double>(task.count, exec, task.fn);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int points = 4000;
    int repeats = 3;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::strcmp(argv[i], "--points") == 0) points = std::atoi(argv[i + 1]);
        if (std::strcmp(argv[i], "--repeats") == 0) repeats = std::atoi(argv[i + 1]);
    }

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif

    const FamilyParams poisson = validate_params(0.0, 5.0);
    const FamilyParams negbin = validate_params(1.0, 5.0);
    const FamilyParams binom = validate_params(-1.0, 20.0);

    const std::vector<double> geo = make_grid({0.05, 20.0, points, Spacing::geometric});
    const std::vector<double> interior = make_interior_grid(0.0, 1.0, points);

    std::vector<Task> tasks;
    tasks.push_back({"shannon c=0 n=5", geo.size(),
                     [&](std::size_t i) { return shannon(poisson, geo[i]).value; }});
    tasks.push_back({"shannon c=1 n=5", geo.size(),
                     [&](std::size_t i) { return shannon(negbin, geo[i]).value; }});
    tasks.push_back({"sum_squares c=1 n=5", geo.size(),
                     [&](std::size_t i) { return sum_squares(negbin, geo[i]).value; }});
    tasks.push_back({"H'''' exact c=-1 l=20", interior.size(), [&](std::size_t i) {
                         return shannon_derivative_exact(binom, interior[i], 4);
                     }});

    std::printf("%-24s %10s %12s %12s %9s %10s\n", "task", "points", "serial_ms", "openmp_ms",
                "speedup", "max|diff|");
    for (const Task& task : tasks) {
        std::vector<double> serial_out, parallel_out;
        const double ts = time_run(task, ExecPolicy{false}, repeats, serial_out);
        const double tp = time_run(task, ExecPolicy{true}, repeats, parallel_out);
        double max_diff = 0.0;
        for (std::size_t i = 0; i < serial_out.size(); ++i)
            max_diff = std::max(max_diff, std::abs(serial_out[i] - parallel_out[i]));
        std::printf("%-24s %10zu %12.2f %12.2f %8.2fx %10.3g\n", task.name.c_str(), task.count,
                    ts * 1e3, tp * 1e3, ts / tp, max_diff);
        if (max_diff != 0.0) {
            std::printf("MISMATCH between serial and parallel results\n");
            return 1;
        }
    }

    // a whole suite through both paths
    {
        SuiteConfig serial_cfg, parallel_cfg;
        serial_cfg.exec.parallel = false;
        const FamilyParams p = validate_params(-1.0, 10.0);
        const auto t0 = std::chrono::steady_clock::now();
        const CheckReport a = theorem1_sign_check(p, 3, serial_cfg);
        const auto t1 = std::chrono::steady_clock::now();
        const CheckReport b = theorem1_sign_check(p, 3, parallel_cfg);
        const auto t2 = std::chrono::steady_clock::now();
        const double ts = std::chrono::duration<double>(t1 - t0).count();
        const double tp = std::chrono::duration<double>(t2 - t1).count();
        bool same = a.findings.size() == b.findings.size();
        for (std::size_t i = 0; same && i < a.findings.size(); ++i)
            same = a.findings[i].value == b.findings[i].value &&
                   a.findings[i].margin == b.findings[i].margin;
        std::printf("%-24s %10zu %12.2f %12.2f %8.2fx %10s\n", "theorem1 suite l=10",
                    a.findings.size(), ts * 1e3, tp * 1e3, ts / tp, same ? "0" : "DIFFER");
        if (!same) return 1;
    }
    return 0;
}
