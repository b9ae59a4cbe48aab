#pragma once

#include "levyconv/semigroup.hpp"
#include "levyconv/stochastic_integral.hpp"

#include <utility>
#include <vector>

namespace levyconv {

struct ConvolutionPath {
    std::vector<double> times;
    std::vector<ModelVector> values;                    // right-continuous value at each time
    std::vector<std::pair<std::size_t, ModelVector>> jumps;  // (time index, jump vector)
};

ModelVector convolve(const StepIntegrand& xi, const AtomList& atoms, const IntensityMeasure& nu,
                     const DiagonalGenerator& gen, double t);

// Same, with the per-piece drift vectors precomputed by piece_drifts().
ModelVector convolve_with_drifts(const StepIntegrand& xi, const std::vector<ModelVector>& drifts,
                                 const AtomList& atoms, const DiagonalGenerator& gen, double t);

// Values on the union of the grid and all atom times, stepped incrementally
// (one semigroup decay per segment).
ConvolutionPath convolution_path(const StepIntegrand& xi, const AtomList& atoms,
                                 const IntensityMeasure& nu, const DiagonalGenerator& gen,
                                 const std::vector<double>& grid);

// int_0^T |path(t)|^p_{D_A(theta + 1/p, q); delta=1} dt by trapezoid over the
// path's own grid, averaging the two one-sided values at jumps.
double regularity_functional(const ConvolutionPath& path, const DiagonalGenerator& gen,
                             double theta, double p, double q, double T);

// Same quadrature against a prebuilt norm plan (plan decides the norm).
double regularity_functional(const ConvolutionPath& path, const InterpolationNormPlan& plan,
                             double p);

// Uniform grid on [0, T] including both endpoints.
std::vector<double> uniform_grid(double T, int points);

}  // namespace levyconv
