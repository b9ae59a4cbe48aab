#pragma once

#include "levyconv/model_vector.hpp"
#include "levyconv/rng.hpp"

#include <functional>
#include <string>
#include <vector>

namespace levyconv {

enum class MarkKind { Finite, Interval };

// A mark: label index for finite spaces, a point of (eps, 1] for interval
// spaces. The owning space decides which field is meaningful.
struct Mark {
    std::size_t index = 0;
    double point = 0.0;
};

struct MarkSpace {
    MarkKind kind = MarkKind::Finite;
    std::vector<std::string> labels;  // finite kind
    double eps = 0.0;                 // interval kind: domain (eps, 1]

    static MarkSpace finite(std::vector<std::string> labels);
    static MarkSpace interval(double eps);

    std::string describe(const Mark& x) const;
};

// Subset B of the mark space, used by counting windows.
struct MarkSubset {
    bool whole = true;
    std::vector<std::size_t> indices;  // finite kind
    double lo = 0.0, hi = 0.0;         // interval kind: B = (lo, hi]

    static MarkSubset all() { return {}; }
    static MarkSubset labels(std::vector<std::size_t> idx);
    static MarkSubset range(double lo, double hi);

    bool contains(const MarkSpace& space, const Mark& x) const;
};

// Finite-activity intensity measure on a mark space. Immutable after
// construction; safe to share across workers.
class IntensityMeasure {
public:
    static IntensityMeasure finite(std::vector<std::string> labels, std::vector<double> weights);
    static IntensityMeasure interval(double eps, std::function<double(double)> density);

    const MarkSpace& space() const { return space_; }
    MarkKind kind() const { return space_.kind; }
    double total_mass() const { return total_mass_; }

    double weight(std::size_t index) const { return weights_.at(index); }
    double density_at(double x) const;

    // nu(B) for a mark subset: exact sum (finite) or quadrature (interval).
    double mass(const MarkSubset& subset) const;

    // Integral of a scalar function against nu.
    double integral(const std::function<double(const Mark&)>& g) const;

    // One mark distributed as nu / nu(S). Throws if the measure is null.
    Mark sample(Rng& rng) const;

    static constexpr int TABLE_POINTS = 4096;  // log-spaced inverse-CDF table
    static constexpr int QUAD_PANELS = 64;

private:
    IntensityMeasure() = default;

    MarkSpace space_;
    std::vector<double> weights_;
    std::vector<double> cum_weights_;
    std::function<double(double)> density_;
    std::vector<double> grid_;  // table nodes, grid_[0] = eps, grid_.back() = 1
    std::vector<double> cdf_;   // cumulative mass at grid nodes
    double total_mass_ = 0.0;
};

// ∫_S |f(x)|^p nu(dx) with |·| the model-space norm. Throws on non-finite
// integrand values, naming the offending mark.
double nu_integral(const std::function<ModelVector(const Mark&)>& f, const IntensityMeasure& nu,
                   double p);

// ∫_S f(x) nu(dx) componentwise (the compensator drift of a step piece).
ModelVector nu_vector_integral(const std::function<ModelVector(const Mark&)>& f,
                               const IntensityMeasure& nu, std::size_t dim, double norm_exponent);

}  // namespace levyconv
