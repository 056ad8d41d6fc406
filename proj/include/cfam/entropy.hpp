#pragma once

#include "cfam/family.hpp"

namespace cfam {

struct EntropyValue {
    double value = 0.0;
    double error_bound = 0.0;
    long long terms_used = 0;
};

// Shannon entropy H(x) = -sum_k p_k log p_k, natural log.
EntropyValue shannon(const FamilyParams& p, double x, const TruncationPolicy& policy = {});

// Index of coincidence S(x) = sum_k p_k^2 (collision probability, in [0,1]).
EntropyValue sum_squares(const FamilyParams& p, double x, const TruncationPolicy& policy = {});

// Renyi entropy of order 2, -log S, with first-order error propagation.
// Throws degenerate_log when the S interval touches zero.
EntropyValue renyi2(const FamilyParams& p, double x, const TruncationPolicy& policy = {});

// Tsallis entropy of order 2, 1 - S.
EntropyValue tsallis2(const FamilyParams& p, double x, const TruncationPolicy& policy = {});

// Modified Bessel I0 by its power series, to ~1e-14 relative for z <= 50.
// Independent oracle: for the Poisson family S_{n}(x) = e^{-2nx} I0(2nx).
double bessel_i0(double z);

} // namespace cfam
