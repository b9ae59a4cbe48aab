#include "levyconv/semigroup.hpp"

#include "levyconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyconv {

namespace {

void validate_params(const NormParams& p) {
    if (!(p.theta > 0.0 && p.theta < 1.0))
        throw std::invalid_argument("interpolation parameter theta must lie in (0,1)");
    if (!(p.q >= 1.0) || !std::isfinite(p.q))
        throw std::invalid_argument("interpolation exponent q must be finite and >= 1");
    if (!(p.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (p.m < 1) throw std::invalid_argument("operator power m must be >= 1");
}

}  // namespace

DiagonalGenerator::DiagonalGenerator(std::vector<double> eigenvalues)
    : lambda(std::move(eigenvalues)) {
    if (lambda.empty()) throw std::invalid_argument("generator needs at least one eigenvalue");
    for (double l : lambda)
        if (!(l > 0.0) || !std::isfinite(l))
            throw std::invalid_argument("eigenvalues must be strictly positive and finite");
}

DiagonalGenerator DiagonalGenerator::laplacian_1d(std::size_t n) {
    std::vector<double> lam(n);
    for (std::size_t k = 0; k < n; ++k) lam[k] = double((k + 1) * (k + 1));
    return DiagonalGenerator(std::move(lam));
}

double DiagonalGenerator::lambda_min() const {
    return *std::min_element(lambda.begin(), lambda.end());
}

double DiagonalGenerator::lambda_max() const {
    return *std::max_element(lambda.begin(), lambda.end());
}

ModelVector apply_semigroup(const DiagonalGenerator& gen, double t, const ModelVector& x) {
    if (!(t >= 0.0)) throw std::invalid_argument("semigroup time must be >= 0");
    if (gen.dim() != x.coeffs.size())
        throw std::invalid_argument("generator/vector dimension mismatch");
    ModelVector y = x;
    for (std::size_t k = 0; k < y.coeffs.size(); ++k) y.coeffs[k] *= std::exp(-t * gen.lambda[k]);
    return y;
}

ModelVector apply_Am_semigroup(const DiagonalGenerator& gen, int m, double t,
                               const ModelVector& x) {
    if (!(t > 0.0)) throw std::invalid_argument("A^m e^{-tA} requires t > 0");
    if (m < 1) throw std::invalid_argument("operator power m must be >= 1");
    if (gen.dim() != x.coeffs.size())
        throw std::invalid_argument("generator/vector dimension mismatch");
    ModelVector y = x;
    for (std::size_t k = 0; k < y.coeffs.size(); ++k) {
        double l = gen.lambda[k];
        y.coeffs[k] *= std::pow(l, m) * std::exp(-t * l);
    }
    return y;
}

InterpolationNormPlan::InterpolationNormPlan(const DiagonalGenerator& gen,
                                             const NormParams& params, int panels)
    : params_(params), lambda_(gen.lambda), panels_(panels) {
    validate_params(params_);
    if (panels_ < 1) throw std::invalid_argument("quadrature needs at least one panel");

    const double c1 = params_.m * (1.0 - params_.theta);  // per-mode power of t
    const double beta = params_.q * c1;                    // power of t in the envelope
    const double lam_max = gen.lambda_max();
    const double lam_min = gen.lambda_min();

    // Lower cutoff: below t_min the integrand sits under the envelope
    // t^{beta-1} (lam_max^m |x|)^q, whose integral is 1e-18 of the peak-scale
    // contribution at t_ref.
    double t_ref = std::min(params_.delta, c1 / lam_max);
    if (!std::isfinite(t_ref)) t_ref = c1 / lam_max;
    double u_min = std::log(t_ref) + std::log(1e-18) / beta;
    u_min = std::max(u_min, std::log(t_ref) - 650.0);

    // Upper cutoff: the slowest mode peaks at c1/lam_min and then dies like
    // e^{-q lam_min t}; iterate the kill point where it is 1e-18 of its peak.
    const double t_peak_slow = c1 / lam_min;
    double t_kill = t_peak_slow;
    for (int it = 0; it < 100; ++it) {
        double next = t_peak_slow + (std::log(1e18) +
                                     beta * std::max(0.0, std::log(t_kill / t_peak_slow))) /
                                        (params_.q * lam_min);
        if (std::abs(next - t_kill) <= 1e-12 * next) {
            t_kill = next;
            break;
        }
        t_kill = next;
    }
    double u_max = std::isfinite(params_.delta) ? std::min(std::log(params_.delta), std::log(t_kill))
                                                : std::log(t_kill);
    if (!(u_max > u_min)) u_max = u_min + 1.0;

    const auto& xs = boost::math::quadrature::gauss<double, 16>::abscissa();
    const auto& ws = boost::math::quadrature::gauss<double, 16>::weights();
    const double h = (u_max - u_min) / panels_;
    node_t_.reserve(std::size_t(panels_) * 2 * xs.size());
    node_w_.reserve(node_t_.capacity());
    for (int pnl = 0; pnl < panels_; ++pnl) {
        double mid = u_min + (pnl + 0.5) * h;
        double half = 0.5 * h;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            node_t_.push_back(std::exp(mid + half * xs[i]));
            node_w_.push_back(half * ws[i]);
            if (xs[i] != 0.0) {
                node_t_.push_back(std::exp(mid - half * xs[i]));
                node_w_.push_back(half * ws[i]);
            }
        }
    }

    const std::size_t n = lambda_.size();
    factors_.resize(node_t_.size() * n);
    for (std::size_t j = 0; j < node_t_.size(); ++j) {
        double t = node_t_[j];
        double u = std::log(t);
        for (std::size_t k = 0; k < n; ++k) {
            double l = lambda_[k];
            factors_[j * n + k] = std::exp(c1 * u + params_.m * std::log(l) - t * l);
        }
    }
    if (params_.q == 2.0) {
        mode_coeff_.assign(n, 0.0);
        for (std::size_t j = 0; j < node_t_.size(); ++j) {
            const double* f = factors_.data() + j * n;
            for (std::size_t k = 0; k < n; ++k) mode_coeff_[k] += node_w_[j] * f[k] * f[k];
        }
    }
}

double InterpolationNormPlan::quadrature_q(const ModelVector& x) const {
    const std::size_t n = lambda_.size();
    if (x.coeffs.size() != n) throw std::invalid_argument("plan/vector dimension mismatch");
    if (params_.q == 2.0 && x.norm_exponent == 2.0) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += mode_coeff_[k] * x.coeffs[k] * x.coeffs[k];
        return acc;
    }
    const double r = x.norm_exponent;
    double acc = 0.0;
    for (std::size_t j = 0; j < node_t_.size(); ++j) {
        const double* f = factors_.data() + j * n;
        double norm;
        if (r == 2.0) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                double y = f[k] * x.coeffs[k];
                s += y * y;
            }
            norm = std::sqrt(s);
        } else if (r == 1.0) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += std::abs(f[k] * x.coeffs[k]);
            norm = s;
        } else {
            double mx = 0.0;
            for (std::size_t k = 0; k < n; ++k) mx = std::max(mx, std::abs(f[k] * x.coeffs[k]));
            if (mx == 0.0) {
                norm = 0.0;
            } else {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += std::pow(std::abs(f[k] * x.coeffs[k]) / mx, r);
                norm = mx * std::pow(s, 1.0 / r);
            }
        }
        acc += node_w_[j] * std::pow(norm, params_.q);
    }
    return acc;
}

double InterpolationNormPlan::finish(double integral_q, const ModelVector& x) const {
    double total = integral_q;
    if (params_.full) total += std::pow(x.e_norm(), params_.q);
    if (total == 0.0) return 0.0;
    return std::pow(total, 1.0 / params_.q);
}

double InterpolationNormPlan::evaluate(const ModelVector& x) const {
    return finish(quadrature_q(x), x);
}

double InterpolationNormPlan::evaluate_checked(const ModelVector& x) const {
    double coarse = quadrature_q(x);
    InterpolationNormPlan fine(DiagonalGenerator(lambda_), params_, 2 * panels_);
    double refined = fine.quadrature_q(x);
    double scale = std::max({std::abs(coarse), std::abs(refined),
                             std::numeric_limits<double>::min()});
    if (std::abs(coarse - refined) > 1e-8 * scale)
        throw std::runtime_error("interpolation-norm quadrature did not converge under refinement");
    return finish(refined, x);
}

double interpolation_norm(const DiagonalGenerator& gen, const ModelVector& x,
                          const NormParams& params) {
    InterpolationNormPlan plan(gen, params, 64);
    return plan.evaluate_checked(x);
}

double reiteration_check(const DiagonalGenerator& gen, const ModelVector& x, double theta,
                         double p, double q) {
    if (!(p > 1.0)) throw std::invalid_argument("reiteration requires p > 1");
    if (!(theta > 0.0 && theta < 1.0 - 1.0 / p))
        throw std::invalid_argument("reiteration requires theta in (0, 1 - 1/p)");
    if (!(x.e_norm() > 0.0)) throw std::invalid_argument("reiteration ratio undefined for x = 0");

    NormParams first{theta + 1.0 / p, q, 1.0, 1, false};
    NormParams second{theta / 2.0 + 1.0 / (2.0 * p), q, 1.0, 2, false};
    double a = InterpolationNormPlan(gen, first).evaluate_checked(x);
    double b = InterpolationNormPlan(gen, second).evaluate_checked(x);
    if (!(b > 0.0)) throw std::runtime_error("reiteration denominator vanished");
    return a / b;
}

}  // namespace levyconv
