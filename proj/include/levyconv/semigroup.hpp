#pragma once

#include "levyconv/model_vector.hpp"

#include <vector>

namespace levyconv {

// Diagonal generator with strictly positive spectrum, so e^{-tA} is an
// analytic contraction semigroup and A^{-1} is bounded.
struct DiagonalGenerator {
    std::vector<double> lambda;

    explicit DiagonalGenerator(std::vector<double> eigenvalues);
    static DiagonalGenerator laplacian_1d(std::size_t n);  // lambda_k = k^2

    std::size_t dim() const { return lambda.size(); }
    double lambda_min() const;
    double lambda_max() const;
};

ModelVector apply_semigroup(const DiagonalGenerator& gen, double t, const ModelVector& x);

// A^m e^{-tA} x; undefined at t = 0 (operator norm blows up like t^-m).
ModelVector apply_Am_semigroup(const DiagonalGenerator& gen, int m, double t,
                               const ModelVector& x);

struct NormParams {
    double theta = 0.5;  // in (0,1)
    double q = 2.0;      // >= 1, finite
    double delta = 1.0;  // > 0, may be +infinity
    int m = 1;           // >= 1
    bool full = false;   // add |x|^q inside the q-th root
};

// Precomputed quadrature of the norm
//   |x|^q = int_0^delta |t^{m(1-theta)} A^m e^{-tA} x|^q dt/t
// under t = e^u with composite Gauss-Legendre nodes. Cutoffs come from the
// analytic envelope of the integrand, so the nodes do not depend on x.
// Immutable after construction; safe to share across workers.
class InterpolationNormPlan {
public:
    InterpolationNormPlan(const DiagonalGenerator& gen, const NormParams& params, int panels = 64);

    double evaluate(const ModelVector& x) const;

    // Evaluates on this plan and on a 2x-refined one; throws if they
    // disagree beyond 1e-8 relative.
    double evaluate_checked(const ModelVector& x) const;

    const NormParams& params() const { return params_; }

private:
    double quadrature_q(const ModelVector& x) const;  // the integral, before root/full handling
    double finish(double integral_q, const ModelVector& x) const;

    NormParams params_;
    std::vector<double> lambda_;
    std::vector<double> node_t_;
    std::vector<double> node_w_;
    std::vector<double> factors_;     // node-major [node][mode]: t^{m(1-theta)} lambda^m e^{-t lambda}
    std::vector<double> mode_coeff_;  // q=2 collapse: integral = sum_k coeff_k x_k^2
    int panels_ = 0;
};

double interpolation_norm(const DiagonalGenerator& gen, const ModelVector& x,
                          const NormParams& params);

// |x|_{D_A(theta+1/p, q);1} / |x|_{D_{A^2}(theta/2+1/(2p), q);1}; the two
// norms are equivalent, so ratios over a space stay in a fixed band.
double reiteration_check(const DiagonalGenerator& gen, const ModelVector& x, double theta,
                         double p, double q);

}  // namespace levyconv
