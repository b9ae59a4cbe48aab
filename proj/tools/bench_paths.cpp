// Compares the serial reference lane against the OpenMP lane on an identical
// moment-estimation workload and reports throughput.  The two lanes must agree
// bitwise: path -> statistic mapping is deterministic and the reduction is
// fixed-order, so any difference is a bug, not noise.
#include "levyconv/mark_space.hpp"
#include "levyconv/parallel.hpp"
#include "levyconv/semigroup.hpp"
#include "levyconv/stochastic_integral.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <vector>

using namespace levyconv;

namespace {

struct Workload {
    std::shared_ptr<IntensityMeasure> nu;
    StepIntegrand xi;
    DiagonalGenerator gen;
};

Workload make_workload(std::size_t dim) {
    auto nu = std::make_shared<IntensityMeasure>(IntensityMeasure::finite(
        {"a", "b", "c", "d"}, {1.0, 0.5, 1.5, 1.0}));
    std::vector<double> weights = {1.0, -0.6, 0.8, 1.2};
    std::vector<double> profile(dim);
    for (std::size_t k = 0; k < dim; ++k) profile[k] = 1.0 / double((k + 1) * (k + 1));
    StepIntegrand xi = StepIntegrand::separable(
        {0.0, 0.4, 1.0},
        {[weights](const Mark& m) { return weights.at(m.index); },
         [weights](const Mark& m) { return -0.5 * weights.at(m.index); }},
        {ModelVector(profile, 2.0), ModelVector(profile, 2.0)}, 1.0);
    return Workload{std::move(nu), std::move(xi), DiagonalGenerator::laplacian_1d(dim)};
}

double run_lane(const Workload& w, std::size_t n_paths, ExecMode exec, double& out_mean) {
    MomentOptions opt;
    opt.p = 2.0;
    opt.q = 2.0;
    opt.n_paths = n_paths;
    opt.seed = 20260814;
    opt.gen = &w.gen;
    opt.exec = exec;
    auto t0 = std::chrono::steady_clock::now();
    MomentEstimate est = moment_estimate(w.xi, w.nu, opt);
    auto t1 = std::chrono::steady_clock::now();
    out_mean = est.mean;
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_paths = 20000;
    std::size_t dim = 16;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--paths")) n_paths = std::strtoull(argv[i + 1], nullptr, 10);
        if (!std::strcmp(argv[i], "--dim")) dim = std::strtoull(argv[i + 1], nullptr, 10);
    }
    if (n_paths < 100) n_paths = 100;

    Workload w = make_workload(dim);

    double mean_serial = 0.0, mean_omp = 0.0;
    // Warm-up pass so lazily built tables don't charge the first lane.
    double warm;
    run_lane(w, 200, ExecMode::Serial, warm);

    double t_serial = run_lane(w, n_paths, ExecMode::Serial, mean_serial);
    double t_omp = run_lane(w, n_paths, ExecMode::OpenMP, mean_omp);

    std::printf("paths=%zu dim=%zu threads=%d\n", n_paths, dim, hardware_threads());
    std::printf("serial  %8.3f s  (%.0f paths/s)  mean=%.17g\n", t_serial,
                double(n_paths) / t_serial, mean_serial);
    std::printf("openmp  %8.3f s  (%.0f paths/s)  mean=%.17g\n", t_omp,
                double(n_paths) / t_omp, mean_omp);
    std::printf("speedup %.2fx\n", t_serial / t_omp);

    if (std::memcmp(&mean_serial, &mean_omp, sizeof(double)) != 0) {
        std::printf("FAIL: lanes disagree bitwise\n");
        return 1;
    }
    std::printf("lanes agree bitwise\n");
    return 0;
}
