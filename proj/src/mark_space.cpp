#include "levyconv/mark_space.hpp"

#include "levyconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace levyconv {

namespace {

std::string format_point(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

MarkSpace MarkSpace::finite(std::vector<std::string> labels) {
    if (labels.empty()) throw std::invalid_argument("finite mark space needs at least one label");
    MarkSpace s;
    s.kind = MarkKind::Finite;
    s.labels = std::move(labels);
    return s;
}

MarkSpace MarkSpace::interval(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("interval mark space needs 0 < eps < 1");
    MarkSpace s;
    s.kind = MarkKind::Interval;
    s.eps = eps;
    return s;
}

std::string MarkSpace::describe(const Mark& x) const {
    if (kind == MarkKind::Finite) {
        if (x.index < labels.size()) return labels[x.index];
        return "label#" + std::to_string(x.index);
    }
    return "x=" + format_point(x.point);
}

MarkSubset MarkSubset::labels(std::vector<std::size_t> idx) {
    MarkSubset b;
    b.whole = false;
    b.indices = std::move(idx);
    return b;
}

MarkSubset MarkSubset::range(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("mark range needs lo < hi");
    MarkSubset b;
    b.whole = false;
    b.lo = lo;
    b.hi = hi;
    return b;
}

bool MarkSubset::contains(const MarkSpace& space, const Mark& x) const {
    if (whole) return true;
    if (space.kind == MarkKind::Finite)
        return std::find(indices.begin(), indices.end(), x.index) != indices.end();
    return lo < x.point && x.point <= hi;
}

IntensityMeasure IntensityMeasure::finite(std::vector<std::string> labels,
                                          std::vector<double> weights) {
    if (labels.size() != weights.size())
        throw std::invalid_argument("label/weight count mismatch");
    IntensityMeasure nu;
    nu.space_ = MarkSpace::finite(std::move(labels));
    nu.weights_ = std::move(weights);
    nu.cum_weights_.reserve(nu.weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < nu.weights_.size(); ++i) {
        double w = nu.weights_[i];
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("weight for " + nu.space_.labels[i] +
                                        " must be finite and nonnegative");
        acc += w;
        nu.cum_weights_.push_back(acc);
    }
    nu.total_mass_ = acc;
    return nu;
}

IntensityMeasure IntensityMeasure::interval(double eps, std::function<double(double)> density) {
    if (!density) throw std::invalid_argument("interval intensity needs a density");
    IntensityMeasure nu;
    nu.space_ = MarkSpace::interval(eps);
    nu.density_ = std::move(density);

    // Log-spaced nodes resolve densities that blow up toward eps.
    const int n = TABLE_POINTS;
    nu.grid_.resize(n);
    nu.cdf_.resize(n);
    const double lu = std::log(eps);
    for (int i = 0; i < n; ++i) nu.grid_[i] = std::exp(lu * (1.0 - double(i) / (n - 1)));
    nu.grid_[0] = eps;
    nu.grid_[n - 1] = 1.0;

    auto integrand = [&](double u) {
        double x = std::exp(u);
        double d = nu.density_(x);
        if (!std::isfinite(d) || d < 0.0)
            throw std::runtime_error("density not finite and nonnegative at x=" + format_point(x));
        return d * x;
    };
    nu.cdf_[0] = 0.0;
    for (int i = 1; i < n; ++i) {
        double a = std::log(nu.grid_[i - 1]);
        double b = std::log(nu.grid_[i]);
        nu.cdf_[i] = nu.cdf_[i - 1] + composite_gauss(integrand, a, b, 1);
    }
    nu.total_mass_ = nu.cdf_[n - 1];

    // Cross-check the table against one coarse independent pass.
    double direct = composite_gauss(integrand, lu, 0.0, QUAD_PANELS);
    double scale = std::max({std::abs(direct), std::abs(nu.total_mass_), 1e-300});
    if (std::abs(direct - nu.total_mass_) > 1e-10 * scale)
        throw std::runtime_error("intensity table disagrees with direct quadrature: table=" +
                                 format_point(nu.total_mass_) + " direct=" + format_point(direct));
    if (!std::isfinite(nu.total_mass_))
        throw std::runtime_error("intensity has non-finite total mass");
    return nu;
}

double IntensityMeasure::density_at(double x) const {
    if (space_.kind != MarkKind::Interval)
        throw std::invalid_argument("density_at only applies to interval intensities");
    if (!(x > space_.eps && x <= 1.0))
        throw std::invalid_argument("point outside mark domain: x=" + format_point(x));
    return density_(x);
}

double IntensityMeasure::mass(const MarkSubset& subset) const {
    if (subset.whole) return total_mass_;
    if (space_.kind == MarkKind::Finite) {
        double acc = 0.0;
        for (std::size_t i : subset.indices) acc += weights_.at(i);
        return acc;
    }
    double lo = std::max(subset.lo, space_.eps);
    double hi = std::min(subset.hi, 1.0);
    if (!(lo < hi)) return 0.0;
    auto integrand = [&](double u) {
        double x = std::exp(u);
        return density_(x) * x;
    };
    return composite_gauss(integrand, std::log(lo), std::log(hi), QUAD_PANELS);
}

double IntensityMeasure::integral(const std::function<double(const Mark&)>& g) const {
    if (space_.kind == MarkKind::Finite) {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            Mark x{i, 0.0};
            acc += weights_[i] * g(x);
        }
        return acc;
    }
    auto integrand = [&](double u) {
        double x = std::exp(u);
        Mark m{0, x};
        return g(m) * density_(x) * x;
    };
    return composite_gauss(integrand, std::log(space_.eps), 0.0, QUAD_PANELS);
}

Mark IntensityMeasure::sample(Rng& rng) const {
    if (!(total_mass_ > 0.0)) throw std::runtime_error("cannot sample from a null intensity");
    double target = rng.uniform_oc(total_mass_);
    if (space_.kind == MarkKind::Finite) {
        auto it = std::lower_bound(cum_weights_.begin(), cum_weights_.end(), target);
        std::size_t i = std::min<std::size_t>(it - cum_weights_.begin(), weights_.size() - 1);
        return Mark{i, 0.0};
    }
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), target);
    std::size_t j = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
    if (j == 0) j = 1;
    double c0 = cdf_[j - 1], c1 = cdf_[j];
    double t = c1 > c0 ? (target - c0) / (c1 - c0) : 1.0;
    double x = grid_[j - 1] + t * (grid_[j] - grid_[j - 1]);
    if (!(x > space_.eps)) x = std::nextafter(space_.eps, 1.0);
    if (x > 1.0) x = 1.0;
    return Mark{0, x};
}

double nu_integral(const std::function<ModelVector(const Mark&)>& f, const IntensityMeasure& nu,
                   double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("moment order must satisfy p >= 1");
    auto g = [&](const Mark& x) {
        const ModelVector v = f(x);
        double val = std::pow(v.e_norm(), p);
        if (!std::isfinite(val))
            throw std::runtime_error("integrand not finite at mark " + nu.space().describe(x));
        return val;
    };
    return nu.integral(g);
}

ModelVector nu_vector_integral(const std::function<ModelVector(const Mark&)>& f,
                               const IntensityMeasure& nu, std::size_t dim, double norm_exponent) {
    ModelVector acc = ModelVector::zero(dim, norm_exponent);
    if (nu.kind() == MarkKind::Finite) {
        for (std::size_t i = 0; i < nu.space().labels.size(); ++i) {
            Mark x{i, 0.0};
            double w = nu.weight(i);
            if (w != 0.0) acc.axpy(w, f(x));
        }
        return acc;
    }
    // Componentwise log-substituted quadrature, mirroring IntensityMeasure::integral.
    const double lo = std::log(nu.space().eps);
    const double hi = 0.0;
    const int panels = IntensityMeasure::QUAD_PANELS;
    const auto& xs = boost::math::quadrature::gauss<double, 16>::abscissa();
    const auto& ws = boost::math::quadrature::gauss<double, 16>::weights();
    const double h = (hi - lo) / panels;
    auto add_node = [&](double u, double w) {
        double x = std::exp(u);
        if (!(x > nu.space().eps)) x = std::nextafter(nu.space().eps, 1.0);
        if (x > 1.0) x = 1.0;
        Mark m{0, x};
        acc.axpy(w * nu.density_at(x) * x, f(m));
    };
    for (int pnl = 0; pnl < panels; ++pnl) {
        double a = lo + pnl * h;
        double mid = a + 0.5 * h;
        double half = 0.5 * h;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            add_node(mid + half * xs[i], half * ws[i]);
            if (xs[i] != 0.0) add_node(mid - half * xs[i], half * ws[i]);
        }
    }
    if (!acc.all_finite()) throw std::runtime_error("vector integrand produced non-finite values");
    return acc;
}

}  // namespace levyconv
