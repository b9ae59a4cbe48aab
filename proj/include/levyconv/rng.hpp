#pragma once

#include <cstdint>
#include <random>

namespace levyconv {

// splitmix64 finalizer; the documented child-stream derivation is
// child_seed(master, i) = mix(master + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t mix64(std::uint64_t z);
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

// Caller-owned random stream. Never shared across workers; each Monte Carlo
// path derives its own instance via child_seed(master, path_index).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1)
    double uniform01() { return unit_(engine_); }

    // uniform on the half-open interval (0, hi]
    double uniform_oc(double hi) { return hi * (1.0 - uniform01()); }

    // standard normal (Box-Muller, no state beyond the engine)
    double normal();

    // Poisson(lambda): sequential inversion below PTRS_THRESHOLD, transformed
    // rejection with squeeze (PTRS) above.
    std::uint64_t poisson(double lambda);

    static constexpr double PTRS_THRESHOLD = 30.0;

private:
    std::uint64_t poisson_inversion(double lambda);
    std::uint64_t poisson_ptrs(double lambda);

    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace levyconv
