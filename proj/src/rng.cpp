#include "levyconv/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace levyconv {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
}

double Rng::normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

std::uint64_t Rng::poisson(double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("Rng::poisson: rate must be >= 0");
    if (lambda == 0.0) return 0;
    return lambda < PTRS_THRESHOLD ? poisson_inversion(lambda) : poisson_ptrs(lambda);
}

std::uint64_t Rng::poisson_inversion(double lambda) {
    const double u = uniform01();
    double pmf = std::exp(-lambda);
    double cdf = pmf;
    std::uint64_t k = 0;
    while (u > cdf) {
        ++k;
        pmf *= lambda / static_cast<double>(k);
        cdf += pmf;
        if (pmf < 1e-320) break;  // u landed in the far tail
    }
    return k;
}

// Hoermann's PTRS transformed rejection sampler.
std::uint64_t Rng::poisson_ptrs(double lambda) {
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = uniform01() - 0.5;
        const double v = uniform01();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = kf * loglam - lambda - std::lgamma(kf + 1.0);
        if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
    }
}

}  // namespace levyconv
