#pragma once

#include "levyconv/parallel.hpp"
#include "levyconv/prm.hpp"
#include "levyconv/semigroup.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace levyconv {

using MarkFunction = std::function<ModelVector(const Mark&)>;

// Deterministic step process: value xi_j on the time interval (t_{j-1}, t_j],
// zero on (t_n, T] when the partition stops short of the horizon.
struct StepIntegrand {
    std::vector<double> partition;     // t_0 = 0 < t_1 < ... < t_n <= T
    std::vector<MarkFunction> pieces;  // piece j lives on (partition[j], partition[j+1]]
    double horizon = 0.0;
    std::size_t dim = 0;
    double norm_exponent = 2.0;

    void validate() const;

    // Index of the piece whose interval contains t, or npos when t <= 0 or
    // t lies past the partition.
    static constexpr std::size_t npos = ~std::size_t(0);
    std::size_t piece_index(double t) const;

    ModelVector value(double t, const Mark& x) const;

    // xi_j(x) = factor_j(x) * v_j
    static StepIntegrand separable(std::vector<double> partition,
                                   std::vector<std::function<double(const Mark&)>> factors,
                                   std::vector<ModelVector> vectors, double horizon);
};

// Per-piece drift vectors int_S xi_j dnu; cache these outside Monte-Carlo loops.
std::vector<ModelVector> piece_drifts(const StepIntegrand& xi, const IntensityMeasure& nu);

// int_0^t int_S |xi|^p dnu dr, exact for step integrands.
double integrand_p_mass(const StepIntegrand& xi, const IntensityMeasure& nu, double p, double t);

struct PathValue {
    std::vector<double> times;
    std::vector<ModelVector> values;   // right-continuous value at each time
    std::vector<double> running_sup;   // exact sup of |.|_E over [0, times[i]]
    double sup_norm = 0.0;
};

ModelVector integrate(const StepIntegrand& xi, const AtomList& atoms, const IntensityMeasure& nu,
                      double t);

// Evaluates on the union of a uniform grid, the partition, and all atom
// times; sups are exact (the path is affine between breakpoints, with both
// one-sided values considered at atoms).
PathValue path(const StepIntegrand& xi, const AtomList& atoms, const IntensityMeasure& nu,
               int grid_points = 512);

// Value at t_end and exact sup over [0, t_end], given precomputed drifts.
struct EndpointAndSup {
    ModelVector at_end;
    double sup_norm = 0.0;
};
EndpointAndSup integral_endpoint_and_sup(const StepIntegrand& xi,
                                         const std::vector<ModelVector>& drifts,
                                         const AtomList& atoms, double t_end);

struct MomentOptions {
    double p = 2.0;                          // exponent inside the deterministic functional
    double q = 2.0;                          // exponent of the sampled statistic
    std::size_t n_paths = 0;                 // >= 100
    std::uint64_t seed = 0;
    bool sup_statistic = false;              // sup_{t<=T}|.|^q instead of |.(T)|^q
    const DiagonalGenerator* gen = nullptr;  // when set, the statistic is taken on the convolution
    ExecMode exec = ExecMode::OpenMP;
    double t_end = -1.0;                     // default: xi.horizon
};

struct MomentEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n_paths = 0;
    double rhs = 0.0;  // (int_0^t int_S |xi|^p dnu dr)^{q/p}, exact
};

MomentEstimate moment_estimate(const StepIntegrand& xi,
                               std::shared_ptr<const IntensityMeasure> nu,
                               const MomentOptions& opt);

}  // namespace levyconv
