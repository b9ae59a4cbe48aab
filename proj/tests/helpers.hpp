#pragma once

#include "levyconv/mark_space.hpp"
#include "levyconv/rng.hpp"
#include "levyconv/stochastic_integral.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace testutil {

using namespace levyconv;

// The standard four-mark intensity used across the moment checks: nu(S) = 4.
inline std::shared_ptr<IntensityMeasure> four_mark_nu() {
    return std::make_shared<IntensityMeasure>(
        IntensityMeasure::finite({"a", "b", "c", "d"}, {1.0, 0.5, 1.5, 1.0}));
}

inline std::vector<double> decay_profile(std::size_t dim) {
    std::vector<double> v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = 1.0 / double((k + 1) * (k + 1));
    return v;
}

// Two-piece separable integrand on (0, 0.4] and (0.4, 1]; signed mark weights
// so cancellation paths get exercised.
inline StepIntegrand standard_integrand(std::size_t dim, double r = 2.0, double scale = 1.0) {
    std::vector<double> mw = {1.0, -0.6, 0.8, 1.2};
    std::vector<double> prof = decay_profile(dim);
    ModelVector v1(prof, r);
    v1 *= scale;
    ModelVector v2 = v1;
    v2 *= -0.5;
    return StepIntegrand::separable(
        {0.0, 0.4, 1.0},
        {[mw](const Mark& m) { return mw.at(m.index); },
         [mw](const Mark& m) { return mw.at(m.index); }},
        {v1, v2}, 1.0);
}

// Constant integrand: value v on (0, horizon] for every mark.
inline StepIntegrand constant_integrand(const ModelVector& v, double horizon) {
    return StepIntegrand::separable({0.0, horizon}, {[](const Mark&) { return 1.0; }}, {v},
                                    horizon);
}

inline ModelVector basis_vector(std::size_t dim, std::size_t k, double r = 2.0) {
    std::vector<double> c(dim, 0.0);
    c[k] = 1.0;
    return ModelVector(c, r);
}

inline ModelVector random_vector(Rng& rng, std::size_t dim, double r = 2.0) {
    std::vector<double> c(dim);
    for (auto& x : c) x = rng.normal();
    return ModelVector(c, r);
}

inline AtomList hand_atoms(std::shared_ptr<const IntensityMeasure> nu, double horizon,
                           std::vector<Atom> atoms) {
    AtomList out;
    out.horizon = horizon;
    out.nu = std::move(nu);
    out.atoms = std::move(atoms);
    return out;
}

}  // namespace testutil
