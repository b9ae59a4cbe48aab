#include "levyconv/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace levyconv {

namespace {

ModelVector piece_value(const StepIntegrand& xi, std::size_t j, const Mark& x) {
    ModelVector v = xi.pieces[j](x);
    if (v.coeffs.size() != xi.dim || v.norm_exponent != xi.norm_exponent)
        throw std::invalid_argument("integrand piece returned a vector of the wrong shape");
    return v;
}

}  // namespace

ModelVector convolve_with_drifts(const StepIntegrand& xi, const std::vector<ModelVector>& drifts,
                                 const AtomList& atoms, const DiagonalGenerator& gen, double t) {
    if (gen.dim() != xi.dim) throw std::invalid_argument("generator/integrand dimension mismatch");
    ModelVector acc = ModelVector::zero(xi.dim, xi.norm_exponent);
    for (const Atom& a : atoms.atoms) {
        if (a.time > t) break;
        std::size_t j = xi.piece_index(a.time);
        if (j == StepIntegrand::npos) continue;
        ModelVector v = piece_value(xi, j, a.mark);
        for (std::size_t k = 0; k < xi.dim; ++k)
            acc.coeffs[k] += v.coeffs[k] * std::exp(-(t - a.time) * gen.lambda[k]);
    }
    // int_a^b e^{-(t-r)lambda} dr = e^{-(t-b)lambda} (1 - e^{-(b-a)lambda}) / lambda
    for (std::size_t j = 0; j + 1 < xi.partition.size(); ++j) {
        double a = std::min(xi.partition[j], t);
        double b = std::min(xi.partition[j + 1], t);
        if (!(b > a)) continue;
        for (std::size_t k = 0; k < xi.dim; ++k) {
            double l = gen.lambda[k];
            double w = std::exp(-(t - b) * l) * (-std::expm1(-(b - a) * l)) / l;
            acc.coeffs[k] -= w * drifts[j].coeffs[k];
        }
    }
    return acc;
}

ModelVector convolve(const StepIntegrand& xi, const AtomList& atoms, const IntensityMeasure& nu,
                     const DiagonalGenerator& gen, double t) {
    xi.validate();
    if (!(t >= 0.0 && t <= xi.horizon)) throw std::invalid_argument("time outside [0, horizon]");
    if (atoms.horizon < t) throw std::invalid_argument("atom realization does not cover the time");
    return convolve_with_drifts(xi, piece_drifts(xi, nu), atoms, gen, t);
}

std::vector<double> uniform_grid(double T, int points) {
    if (!(T > 0.0) || points < 2) throw std::invalid_argument("grid needs T > 0 and >= 2 points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = T * double(i) / double(points - 1);
    g.back() = T;
    return g;
}

ConvolutionPath convolution_path(const StepIntegrand& xi, const AtomList& atoms,
                                 const IntensityMeasure& nu, const DiagonalGenerator& gen,
                                 const std::vector<double>& grid) {
    xi.validate();
    if (gen.dim() != xi.dim) throw std::invalid_argument("generator/integrand dimension mismatch");
    if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("grid must be nonempty and sorted");
    if (grid.front() < 0.0 || grid.back() > xi.horizon)
        throw std::invalid_argument("grid must lie within [0, horizon]");
    const double t_max = grid.back();
    const std::size_t n = xi.dim;
    const std::vector<ModelVector> drifts = piece_drifts(xi, nu);

    // Output times: grid plus atom times. Internal stepping also visits
    // partition points so each segment carries a single drift.
    std::vector<double> out_times = grid;
    for (const Atom& a : atoms.atoms)
        if (a.time > 0.0 && a.time <= t_max) out_times.push_back(a.time);
    std::sort(out_times.begin(), out_times.end());
    out_times.erase(std::unique(out_times.begin(), out_times.end()), out_times.end());

    std::vector<double> steps = out_times;
    steps.push_back(0.0);
    for (double t : xi.partition)
        if (t > 0.0 && t < t_max) steps.push_back(t);
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

    // Per-segment decay e^{-lambda h} and kernel mass (1-e^{-lambda h})/lambda,
    // cached per distinct step length (the uniform grid reuses one entry).
    std::map<double, std::vector<double>> cache;
    auto factors = [&](double h) -> const std::vector<double>& {
        auto it = cache.find(h);
        if (it != cache.end()) return it->second;
        std::vector<double> f(2 * n);
        for (std::size_t k = 0; k < n; ++k) {
            double l = gen.lambda[k];
            f[k] = std::exp(-l * h);
            f[n + k] = -std::expm1(-l * h) / l;
        }
        return cache.emplace(h, std::move(f)).first->second;
    };

    ConvolutionPath out;
    out.times = out_times;
    out.values.reserve(out_times.size());

    ModelVector v = ModelVector::zero(n, xi.norm_exponent);
    std::size_t atom_i = 0;
    while (atom_i < atoms.atoms.size() && atoms.atoms[atom_i].time <= 0.0) ++atom_i;
    std::size_t rec_i = 0;
    auto record = [&](double t) {
        while (rec_i < out_times.size() && out_times[rec_i] == t) {
            out.values.push_back(v);
            ++rec_i;
        }
    };
    record(0.0);
    for (std::size_t i = 1; i < steps.size(); ++i) {
        double s = steps[i - 1], e = steps[i];
        const std::vector<double>& f = factors(e - s);
        std::size_t j = xi.piece_index(e);
        for (std::size_t k = 0; k < n; ++k) {
            v.coeffs[k] *= f[k];
            if (j != StepIntegrand::npos) v.coeffs[k] -= f[n + k] * drifts[j].coeffs[k];
        }
        if (atom_i < atoms.atoms.size() && atoms.atoms[atom_i].time == e) {
            if (j != StepIntegrand::npos) {
                ModelVector jump = piece_value(xi, j, atoms.atoms[atom_i].mark);
                v += jump;
                if (rec_i < out_times.size() && out_times[rec_i] == e)
                    out.jumps.emplace_back(rec_i, std::move(jump));
            }
            ++atom_i;
        }
        if (!v.all_finite()) throw std::runtime_error("convolution value became non-finite");
        record(e);
    }
    if (out.values.size() != out.times.size())
        throw std::runtime_error("convolution grid bookkeeping failed");
    return out;
}

double regularity_functional(const ConvolutionPath& path, const InterpolationNormPlan& plan,
                             double p) {
    if (path.times.size() != path.values.size() || path.times.size() < 2)
        throw std::invalid_argument("path needs at least two grid values");
    if (!(p >= 1.0)) throw std::invalid_argument("exponent must satisfy p >= 1");

    std::vector<double> g(path.times.size());
    for (std::size_t i = 0; i < path.values.size(); ++i)
        g[i] = std::pow(plan.evaluate(path.values[i]), p);
    for (const auto& [idx, jump] : path.jumps) {
        ModelVector before = path.values[idx];
        before -= jump;
        g[idx] = 0.5 * (std::pow(plan.evaluate(before), p) + g[idx]);
    }
    double acc = 0.0;
    for (std::size_t i = 1; i < path.times.size(); ++i)
        acc += 0.5 * (path.times[i] - path.times[i - 1]) * (g[i - 1] + g[i]);
    return acc;
}

double regularity_functional(const ConvolutionPath& path, const DiagonalGenerator& gen,
                             double theta, double p, double q, double T) {
    if (!(p > 1.0) || !(theta > 0.0 && theta < 1.0 - 1.0 / p))
        throw std::invalid_argument("need p > 1 and theta in (0, 1 - 1/p)");
    if (path.times.empty() || path.times.front() != 0.0 || path.times.back() != T)
        throw std::invalid_argument("path grid must span [0, T]");
    InterpolationNormPlan plan(gen, NormParams{theta + 1.0 / p, q, 1.0, 1, false});
    return regularity_functional(path, plan, p);
}

}  // namespace levyconv
