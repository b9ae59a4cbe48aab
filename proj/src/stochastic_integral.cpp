#include "levyconv/stochastic_integral.hpp"

#include "levyconv/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levyconv {

void StepIntegrand::validate() const {
    if (partition.size() < 2 || partition.front() != 0.0)
        throw std::invalid_argument("partition must start at 0 and have at least one interval");
    for (std::size_t j = 1; j < partition.size(); ++j)
        if (!(partition[j - 1] < partition[j]))
            throw std::invalid_argument("partition must be strictly increasing");
    if (!(horizon > 0.0) || partition.back() > horizon)
        throw std::invalid_argument("partition must end within the positive horizon");
    if (pieces.size() != partition.size() - 1)
        throw std::invalid_argument("need exactly one piece per partition interval");
    for (const auto& f : pieces)
        if (!f) throw std::invalid_argument("integrand piece is empty");
    if (dim < 1) throw std::invalid_argument("integrand dimension must be >= 1");
    if (!(norm_exponent >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
}

std::size_t StepIntegrand::piece_index(double t) const {
    if (!(t > 0.0) || t > partition.back()) return npos;
    auto it = std::lower_bound(partition.begin(), partition.end(), t);
    return std::size_t(it - partition.begin()) - 1;
}

ModelVector StepIntegrand::value(double t, const Mark& x) const {
    std::size_t j = piece_index(t);
    if (j == npos) return ModelVector::zero(dim, norm_exponent);
    ModelVector v = pieces[j](x);
    if (v.coeffs.size() != dim || v.norm_exponent != norm_exponent)
        throw std::invalid_argument("integrand piece returned a vector of the wrong shape");
    return v;
}

StepIntegrand StepIntegrand::separable(std::vector<double> partition,
                                       std::vector<std::function<double(const Mark&)>> factors,
                                       std::vector<ModelVector> vectors, double horizon) {
    if (factors.size() != vectors.size())
        throw std::invalid_argument("separable integrand needs one factor per vector");
    StepIntegrand xi;
    xi.partition = std::move(partition);
    xi.horizon = horizon;
    if (vectors.empty()) throw std::invalid_argument("separable integrand needs pieces");
    xi.dim = vectors[0].coeffs.size();
    xi.norm_exponent = vectors[0].norm_exponent;
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        ModelVector v = vectors[j];
        auto f = factors[j];
        if (!f) throw std::invalid_argument("separable factor is empty");
        xi.pieces.push_back([f, v](const Mark& x) {
            ModelVector out = v;
            out *= f(x);
            return out;
        });
    }
    xi.validate();
    return xi;
}

std::vector<ModelVector> piece_drifts(const StepIntegrand& xi, const IntensityMeasure& nu) {
    std::vector<ModelVector> out;
    out.reserve(xi.pieces.size());
    for (const auto& piece : xi.pieces)
        out.push_back(nu_vector_integral(piece, nu, xi.dim, xi.norm_exponent));
    return out;
}

double integrand_p_mass(const StepIntegrand& xi, const IntensityMeasure& nu, double p, double t) {
    if (!(t >= 0.0 && t <= xi.horizon)) throw std::invalid_argument("time outside [0, horizon]");
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < xi.partition.size(); ++j) {
        double len = std::min(xi.partition[j + 1], t) - std::min(xi.partition[j], t);
        if (len > 0.0) acc += len * nu_integral(xi.pieces[j], nu, p);
    }
    return acc;
}

namespace {

ModelVector piece_value(const StepIntegrand& xi, std::size_t j, const Mark& x) {
    ModelVector v = xi.pieces[j](x);
    if (v.coeffs.size() != xi.dim || v.norm_exponent != xi.norm_exponent)
        throw std::invalid_argument("integrand piece returned a vector of the wrong shape");
    return v;
}

ModelVector integrate_impl(const StepIntegrand& xi, const std::vector<ModelVector>& drifts,
                           const AtomList& atoms, double t) {
    ModelVector acc = ModelVector::zero(xi.dim, xi.norm_exponent);
    for (const Atom& a : atoms.atoms) {
        if (a.time > t) break;
        std::size_t j = xi.piece_index(a.time);
        if (j != StepIntegrand::npos) acc += piece_value(xi, j, a.mark);
    }
    for (std::size_t j = 0; j + 1 < xi.partition.size(); ++j) {
        double len = std::min(xi.partition[j + 1], t) - std::min(xi.partition[j], t);
        if (len > 0.0) acc.axpy(-len, drifts[j]);
    }
    return acc;
}

// Breakpoints of the path on (0, t_end]: partition points and atom times.
std::vector<double> breakpoints(const StepIntegrand& xi, const AtomList& atoms, double t_end) {
    std::vector<double> bp;
    bp.push_back(0.0);
    for (double t : xi.partition)
        if (t > 0.0 && t < t_end) bp.push_back(t);
    for (const Atom& a : atoms.atoms)
        if (a.time <= t_end) bp.push_back(a.time);
    bp.push_back(t_end);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

}  // namespace

ModelVector integrate(const StepIntegrand& xi, const AtomList& atoms, const IntensityMeasure& nu,
                      double t) {
    xi.validate();
    if (!(t >= 0.0 && t <= xi.horizon)) throw std::invalid_argument("time outside [0, horizon]");
    if (atoms.horizon < t) throw std::invalid_argument("atom realization does not cover the time");
    return integrate_impl(xi, piece_drifts(xi, nu), atoms, t);
}

EndpointAndSup integral_endpoint_and_sup(const StepIntegrand& xi,
                                         const std::vector<ModelVector>& drifts,
                                         const AtomList& atoms, double t_end) {
    std::vector<double> bp = breakpoints(xi, atoms, t_end);
    ModelVector v = ModelVector::zero(xi.dim, xi.norm_exponent);
    double sup = 0.0;
    std::size_t atom_i = 0;
    while (atom_i < atoms.atoms.size() && atoms.atoms[atom_i].time <= 0.0) ++atom_i;
    for (std::size_t i = 1; i < bp.size(); ++i) {
        double s = bp[i - 1], e = bp[i];
        std::size_t j = xi.piece_index(e);
        if (j != StepIntegrand::npos) v.axpy(-(e - s), drifts[j]);
        sup = std::max(sup, v.e_norm());  // left limit at e
        if (atom_i < atoms.atoms.size() && atoms.atoms[atom_i].time == e) {
            if (j != StepIntegrand::npos) v += piece_value(xi, j, atoms.atoms[atom_i].mark);
            ++atom_i;
            sup = std::max(sup, v.e_norm());
        }
    }
    return EndpointAndSup{std::move(v), sup};
}

PathValue path(const StepIntegrand& xi, const AtomList& atoms, const IntensityMeasure& nu,
               int grid_points) {
    xi.validate();
    if (grid_points < 2) throw std::invalid_argument("grid needs at least two points");
    if (atoms.horizon < xi.horizon)
        throw std::invalid_argument("atom realization does not cover the horizon");
    const double T = xi.horizon;
    std::vector<ModelVector> drifts = piece_drifts(xi, nu);

    std::vector<double> times;
    for (int i = 0; i < grid_points; ++i) times.push_back(T * double(i) / double(grid_points - 1));
    for (double t : xi.partition)
        if (t > 0.0 && t < T) times.push_back(t);
    for (const Atom& a : atoms.atoms)
        if (a.time <= T) times.push_back(a.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    PathValue out;
    out.times = times;
    out.values.reserve(times.size());
    out.running_sup.reserve(times.size());

    ModelVector v = ModelVector::zero(xi.dim, xi.norm_exponent);
    double sup = 0.0;
    out.values.push_back(v);
    out.running_sup.push_back(0.0);
    std::size_t atom_i = 0;
    while (atom_i < atoms.atoms.size() && atoms.atoms[atom_i].time <= 0.0) ++atom_i;
    for (std::size_t i = 1; i < times.size(); ++i) {
        double s = times[i - 1], e = times[i];
        std::size_t j = xi.piece_index(e);
        if (j != StepIntegrand::npos) v.axpy(-(e - s), drifts[j]);
        sup = std::max(sup, v.e_norm());
        if (atom_i < atoms.atoms.size() && atoms.atoms[atom_i].time == e) {
            if (j != StepIntegrand::npos) v += piece_value(xi, j, atoms.atoms[atom_i].mark);
            ++atom_i;
            sup = std::max(sup, v.e_norm());
        }
        if (!v.all_finite()) throw std::runtime_error("path value became non-finite");
        out.values.push_back(v);
        out.running_sup.push_back(sup);
    }
    out.sup_norm = sup;
    return out;
}

MomentEstimate moment_estimate(const StepIntegrand& xi,
                               std::shared_ptr<const IntensityMeasure> nu,
                               const MomentOptions& opt) {
    xi.validate();
    if (!nu) throw std::invalid_argument("moment_estimate needs an intensity");
    if (opt.n_paths < 100) throw std::invalid_argument("n_paths must be >= 100");
    if (!(opt.p >= 1.0) || !(opt.q >= 1.0))
        throw std::invalid_argument("exponents must satisfy p, q >= 1");
    if (opt.sup_statistic && opt.gen)
        throw std::invalid_argument("sup statistic on the convolution is not supported");
    const double t_end = opt.t_end < 0.0 ? xi.horizon : opt.t_end;
    if (!(t_end > 0.0 && t_end <= xi.horizon))
        throw std::invalid_argument("t_end outside (0, horizon]");

    const std::vector<ModelVector> drifts = piece_drifts(xi, *nu);
    std::vector<double> stat(opt.n_paths);
    run_paths(opt.n_paths, opt.exec, [&](std::size_t i) {
        Rng rng(child_seed(opt.seed, i));
        AtomList atoms = sample_prm(nu, t_end, rng);
        double val;
        if (opt.gen) {
            ModelVector sc = convolve_with_drifts(xi, drifts, atoms, *opt.gen, t_end);
            val = sc.e_norm();
        } else {
            EndpointAndSup es = integral_endpoint_and_sup(xi, drifts, atoms, t_end);
            val = opt.sup_statistic ? es.sup_norm : es.at_end.e_norm();
        }
        stat[i] = std::pow(val, opt.q);
    });

    MeanVar mv = reduce_ordered(stat);
    MomentEstimate est;
    est.mean = mv.mean();
    est.se = mv.se();
    est.n_paths = opt.n_paths;
    est.rhs = std::pow(integrand_p_mass(xi, *nu, opt.p, t_end), opt.q / opt.p);
    return est;
}

}  // namespace levyconv
