#pragma once

#include "levyconv/semigroup.hpp"
#include "levyconv/stochastic_integral.hpp"

#include <string>

namespace levyconv {

struct OracleResult {
    double value = 0.0;
    std::string method;
    double error_bound = 0.0;  // analytic bound on |value - truth|
};

// E|X - lambda|^p, X ~ Poisson(lambda). Independent of the prm-module
// implementation: lgamma-based pmf, reverse-order summation, geometric tail
// bound for the declared error.
OracleResult oracle_poisson_moment(double lambda, double p);

// Closed form of the q=2 Hilbert interpolation norm via lower incomplete
// gamma: |x|^2 = sum_k x_k^2 lambda_k^{2m} gamma(2m(1-theta), 2 lambda_k delta)
// / (2 lambda_k)^{2m(1-theta)}. delta may be +infinity.
OracleResult oracle_interp_norm_hilbert(const DiagonalGenerator& gen, const ModelVector& x,
                                        double theta, int m, double delta);

// E|I(t_end)|^s by conditioning on the atom count N <= max_atoms. Step
// integrands over finite mark spaces make every conditional term an exact
// finite sum (the integrand only sees which partition interval an atom time
// falls in). Refuses when the N-truncation bound exceeds the tolerance.
OracleResult oracle_tiny_paths(const StepIntegrand& xi, const IntensityMeasure& nu, double t_end,
                               double exponent, int max_atoms, double tolerance);

}  // namespace levyconv
