#pragma once

#include "cfam/family.hpp"
#include "cfam/quadrature.hpp"

namespace cfam {

// Integral representations of the entropies and their derivatives. These are
// evaluated by quadrature only and serve as oracles independent of the series
// implementations in entropy.hpp / derivative.hpp.

enum class LogFactorialForm { exponential, logarithmic };

// log(l!) as an integral, either over [0, inf) (exponential form, truncated
// at s_max = 40 + log l with the tail added to the error estimate) or over
// [0, 1] (logarithmic form).
QuadratureResult log_factorial_integral(long long l, LogFactorialForm form,
                                        const QuadratureSpec& spec = {});

// H(x) for c < 0 as closed form plus a [0,1] integral.
QuadratureResult shannon_binomial_integral(const FamilyParams& p, double x,
                                           const QuadratureSpec& spec = {});

// H(x) for the unit-rate Poisson family (c = 0, n = 1), x > 0.
QuadratureResult shannon_poisson_integral(double x, const QuadratureSpec& spec = {});

// (k+1)-th derivative of the unit-rate Poisson H, k >= 1, x > 0.
QuadratureResult poisson_derivative_integral(int k, double x, const QuadratureSpec& spec = {});

// H(x) for c = 1 (negative binomial), n > 1, x > 0.
QuadratureResult shannon_negbin_integral(double n, double x, const QuadratureSpec& spec = {});

// (j+1)-th derivative of H for c = 1, j >= 1, x > 0.
QuadratureResult negbin_derivative_integral(double n, int j, double x,
                                            const QuadratureSpec& spec = {});

// (2k+2)-th derivative of H for c < 0, k >= 0; requires support l >= 2k+2.
QuadratureResult binomial_derivative_integral(const FamilyParams& p, int k, double x,
                                              const QuadratureSpec& spec = {});

// int_0^1 t^{j-1} (1-t)^n (1+xt)^{-(n+j+1)} dt, whose closed form
// (j-1)! / ((n+1)...(n+j)) (x+1)^{-j} validates the quadrature engine.
QuadratureResult beta_identity_fixture(int j, double n, double x,
                                       const QuadratureSpec& spec = {});
double beta_identity_closed_form(int j, double n, double x);

} // namespace cfam
