#include "levyconv/oracle.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace levyconv {

OracleResult oracle_poisson_moment(double lambda, double p) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be positive and finite");
    if (!(p >= 1.0 && p <= 2.0))
        throw std::invalid_argument("moment order must lie in [1,2]");

    const long long cap =
        static_cast<long long>(lambda + 40.0 * std::sqrt(lambda) + 100.0);
    const long double llam = std::log((long double)lambda);
    auto term = [&](long long k) {
        long double log_pmf =
            -(long double)lambda + (long double)k * llam - std::lgamma((long double)k + 1.0L);
        return std::exp(log_pmf) *
               std::pow(std::abs((long double)k - (long double)lambda), (long double)p);
    };
    long double acc = 0.0L;
    for (long long k = cap; k >= 0; --k) acc += term(k);

    // Beyond the cap the term ratio is below (lambda/cap) * (1 + 1/(cap-lambda))^2,
    // comfortably under 0.6 for cap >= lambda + 40 sqrt(lambda) + 100.
    double tail = double(term(cap + 1)) * 3.0;
    OracleResult out;
    out.value = double(acc);
    out.method = "pmf-sum";
    out.error_bound = tail + double(cap) * 1e-18 * out.value + 1e-300;
    return out;
}

OracleResult oracle_interp_norm_hilbert(const DiagonalGenerator& gen, const ModelVector& x,
                                        double theta, int m, double delta) {
    if (x.norm_exponent != 2.0)
        throw std::invalid_argument("unsupported: oracle requires the Hilbert (r=2) configuration");
    if (gen.dim() != x.coeffs.size())
        throw std::invalid_argument("generator/vector dimension mismatch");
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
    if (m < 1) throw std::invalid_argument("operator power m must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");

    const double a = 2.0 * m * (1.0 - theta);
    long double acc = 0.0L;
    for (std::size_t k = 0; k < gen.dim(); ++k) {
        double l = gen.lambda[k];
        double g = std::isfinite(delta) ? boost::math::tgamma_lower(a, 2.0 * l * delta)
                                        : boost::math::tgamma(a);
        acc += (long double)(x.coeffs[k] * x.coeffs[k]) *
               (long double)(std::pow(l, 2.0 * m) * g / std::pow(2.0 * l, a));
    }
    OracleResult out;
    out.value = std::sqrt(double(acc));
    out.method = "gamma-closed-form";
    out.error_bound = 1e-13 * out.value + 1e-300;
    return out;
}

OracleResult oracle_tiny_paths(const StepIntegrand& xi, const IntensityMeasure& nu, double t_end,
                               double exponent, int max_atoms, double tolerance) {
    xi.validate();
    if (nu.kind() != MarkKind::Finite)
        throw std::invalid_argument("exhaustive oracle requires a finite mark space");
    if (max_atoms < 0 || max_atoms > 3)
        throw std::invalid_argument("max_atoms must lie in [0,3]");
    if (!(exponent >= 1.0)) throw std::invalid_argument("moment exponent must be >= 1");
    if (!(t_end > 0.0 && t_end <= xi.horizon))
        throw std::invalid_argument("t_end outside (0, horizon]");

    const double rate = nu.total_mass() * t_end;
    const std::size_t n_marks = nu.space().labels.size();

    // Drift at t_end.
    std::vector<ModelVector> drifts = piece_drifts(xi, nu);
    ModelVector drift = ModelVector::zero(xi.dim, xi.norm_exponent);
    for (std::size_t j = 0; j + 1 < xi.partition.size(); ++j) {
        double len = std::min(xi.partition[j + 1], t_end) - std::min(xi.partition[j], t_end);
        if (len > 0.0) drift.axpy(len, drifts[j]);
    }

    // A single atom lands in piece j with probability overlap_j / t_end and
    // carries mark i with probability w_i / nu(S); only the (piece, mark)
    // pair matters for I(t_end), so the conditional laws are finite.
    struct Outcome {
        double prob;
        ModelVector value;
    };
    std::vector<Outcome> outcomes;
    double covered = 0.0;
    double max_norm = 0.0;
    for (std::size_t j = 0; j + 1 < xi.partition.size(); ++j) {
        double len = std::min(xi.partition[j + 1], t_end) - std::min(xi.partition[j], t_end);
        if (!(len > 0.0)) continue;
        covered += len;
        for (std::size_t i = 0; i < n_marks; ++i) {
            double w = nu.weight(i);
            if (w == 0.0) continue;
            Mark mk{i, 0.0};
            ModelVector v = xi.pieces[j](mk);
            max_norm = std::max(max_norm, v.e_norm());
            outcomes.push_back({(len / t_end) * (w / nu.total_mass()), std::move(v)});
        }
    }
    if (covered < t_end)  // atoms past the partition contribute nothing
        outcomes.push_back({(t_end - covered) / t_end, ModelVector::zero(xi.dim, xi.norm_exponent)});

    // Truncation bound: sum_{N > max} P(N) (N max_norm + |drift|)^exponent.
    const double c0 = drift.e_norm();
    double tail = 0.0;
    {
        double log_rate = rate > 0.0 ? std::log(rate) : 0.0;
        for (int n = max_atoms + 1; n < max_atoms + 400; ++n) {
            double pmf = rate > 0.0
                             ? std::exp(-rate + n * log_rate - std::lgamma(double(n) + 1.0))
                             : 0.0;
            double contribution = pmf * std::pow(double(n) * max_norm + c0, exponent);
            tail += contribution;
            if (n > rate && contribution < 1e-20 * std::max(tail, 1e-300)) break;
        }
    }
    if (tail > tolerance) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.6g exceeds tolerance %.6g", tail, tolerance);
        throw std::runtime_error(std::string("atom-count truncation bound ") + buf);
    }

    // E|I|^s = sum_N P(N) sum over (piece, mark)^N assignments.
    auto moment_given = [&](const ModelVector& total) {
        ModelVector v = total;
        v -= drift;
        return std::pow(v.e_norm(), exponent);
    };
    double total_moment = 0.0;
    for (int n = 0; n <= max_atoms; ++n) {
        double pmf = rate > 0.0 ? std::exp(-rate + n * std::log(rate) - std::lgamma(double(n) + 1.0))
                                : (n == 0 ? 1.0 : 0.0);
        if (pmf == 0.0) continue;
        double conditional = 0.0;
        std::vector<std::size_t> pick(std::size_t(n), 0);
        for (;;) {
            double prob = 1.0;
            ModelVector sum = ModelVector::zero(xi.dim, xi.norm_exponent);
            for (std::size_t slot = 0; slot < pick.size(); ++slot) {
                prob *= outcomes[pick[slot]].prob;
                sum += outcomes[pick[slot]].value;
            }
            conditional += prob * moment_given(sum);
            // next assignment in mixed radix
            std::size_t slot = 0;
            while (slot < pick.size() && ++pick[slot] == outcomes.size()) pick[slot++] = 0;
            if (slot == pick.size()) break;
        }
        total_moment += pmf * conditional;
    }

    OracleResult out;
    out.value = total_moment;
    out.method = "exhaustive";
    out.error_bound = tail;
    return out;
}

}  // namespace levyconv
