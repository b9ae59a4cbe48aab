#pragma once

#include "levyconv/mark_space.hpp"
#include "levyconv/rng.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace levyconv {

struct Atom {
    double time = 0.0;
    Mark mark;
};

// One realization of the measure on S x (0, T]: finitely many atoms, sorted
// by time, all times distinct.
struct AtomList {
    double horizon = 0.0;
    std::shared_ptr<const IntensityMeasure> nu;
    std::vector<Atom> atoms;

    void write_jsonl(std::ostream& os) const;
};

// Product window B x (a, b].
struct Window {
    MarkSubset subset = MarkSubset::all();
    double a = 0.0;
    double b = 0.0;

    static Window time_slice(double a, double b) { return Window{MarkSubset::all(), a, b}; }
};

AtomList sample_prm(std::shared_ptr<const IntensityMeasure> nu, double horizon, Rng& rng);

// #{i : t_i in (a,b], x_i in B}
std::size_t count(const AtomList& atoms, const Window& w);

// gamma(B x (a,b]) = nu(B) * (b - a)
double compensator(const IntensityMeasure& nu, const Window& w);

// count minus compensator
double compensated_count(const AtomList& atoms, const IntensityMeasure& nu, const Window& w);

// E|X - lambda|^p for X ~ Poisson(lambda), p in [1,2], by series summation.
double poisson_centered_abs_moment(double lambda, double p);

}  // namespace levyconv
