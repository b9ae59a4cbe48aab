#pragma once

#include "levyconv/config.hpp"
#include "levyconv/parallel.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace levyconv {

struct RatioReport {
    std::string id;
    double lhs = 0.0;
    double lhs_se = 0.0;      // 0 when lhs_exact
    bool lhs_exact = false;
    double rhs = 0.0;         // exact (deterministic integrand)
    double ratio = 0.0;       // lhs / rhs, 0 in the trivial case
    double bound_constant = 0.0;  // asserted constant; 0 for property-based checks
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    bool trivial = false;
    bool passed = false;
    std::string note;
};

nlohmann::json report_to_json(const RatioReport& r);

// E|I(T)|^p <= 2^{2-p} L_p(E)^2 * int_0^T int_S |xi|^p dnu dt, at q = p.
RatioReport check_ito_bound(const ExperimentConfig& cfg, ExecMode exec = ExecMode::OpenMP);

// E sup_{t<=T} |I(t)|^q <= C^{q/p} (2-k)/(1-k) * RHS^{q/p}, k = q/p < 1.
RatioReport check_low_moment_bound(const ExperimentConfig& cfg, ExecMode exec = ExecMode::OpenMP);

// E int_0^T |SC(t)|^p_{D(theta+1/p,q)} dt vs exact RHS; property-based pass
// (finite ratio, SE within 10%), no absolute constant asserted.
RatioReport check_maximal_regularity(const ExperimentConfig& cfg, ExecMode exec = ExecMode::OpenMP);

struct KernelNode {
    double t = 0.0;
    double s = 0.0;
    double lhs = 0.0;      // quadrature^(q/p - 1)
    double rhs = 0.0;      // C * s^{-(q(1-1/p)+1)}
    double quad = 0.0;
    double closed = 0.0;   // antiderivative value
    bool passed = false;
};

struct KernelLemmaReport {
    double p = 0.0;
    double q = 0.0;
    double alpha = 0.0;
    double constant = 0.0;
    std::vector<KernelNode> nodes;
    bool passed = false;
};

// (int_0^t (t-r+s)^{-pq/(q-p)} dr)^{q/p-1} <= C s^{-(q(1-1/p)+1)} with the
// explicit C = (1/(alpha-1))^{q/p-1}; quadrature cross-checked against the
// antiderivative at 1e-10 relative.
KernelLemmaReport check_kernel_lemma(double p, double q, const std::vector<double>& ts,
                                     const std::vector<double>& ss);

nlohmann::json kernel_report_to_json(const KernelLemmaReport& r);

std::string format_report_table(const std::vector<RatioReport>& reports);

}  // namespace levyconv
