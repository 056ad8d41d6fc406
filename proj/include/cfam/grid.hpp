#pragma once

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#include "cfam/errors.hpp"

namespace cfam {

enum class Spacing { linear, geometric };

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    Spacing spacing = Spacing::linear;
};

// Endpoints included. Geometric spacing requires 0 < min < max.
std::vector<double> make_grid(const GridSpec& spec);

// `points` equispaced values strictly between lo and hi.
std::vector<double> make_interior_grid(double lo, double hi, int points);

// Execution mode for grid loops. Every kernel in this library is a pure
// function of its inputs, so the parallel path must produce bit-identical
// results to the serial one; tests assert that.
struct ExecPolicy {
    bool parallel = true;
};

template <class T, class Fn>
std::vector<T> map_indexed(std::size_t count, const ExecPolicy& exec, Fn&& fn) {
    std::vector<T> out(count);
    if (exec.parallel) {
        std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(cfam_map_indexed_error)
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return out;
#endif
    }
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
}

} // namespace cfam
