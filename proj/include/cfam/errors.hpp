#pragma once

#include <stdexcept>
#include <string>

namespace cfam {

enum class errc {
    non_positive_n,
    n_leq_c,
    non_integer_l,
    domain_violation,
    max_terms_exceeded,
    order_too_high,
    stencil_outside_domain,
    degenerate_log,
    tolerance_not_reached,
    grid_too_coarse,
};

const char* errc_name(errc code) noexcept;

// Single exception type for the whole library; the code distinguishes causes
// so callers (and the CLI exit-code mapping) can branch without string parsing.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) {
    throw Error(code, msg);
}

// True for errors caused by bad user input rather than a failed computation.
inline bool is_validation_error(errc code) noexcept {
    return code == errc::non_positive_n || code == errc::n_leq_c ||
           code == errc::non_integer_l || code == errc::domain_violation ||
           code == errc::order_too_high;
}

} // namespace cfam
