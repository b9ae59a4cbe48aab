#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace levyconv {

// Serial is the reference lane; OpenMP must produce bit-identical results,
// which holds as long as bodies write only to per-index slots and all
// reductions happen afterwards in index order.
enum class ExecMode { Serial, OpenMP };

template <typename Body>
void run_paths(std::size_t n, ExecMode mode, const Body& body) {
#ifdef _OPENMP
    if (mode == ExecMode::OpenMP) {
        std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(levyconv_run_paths_error)
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// One-pass mean/variance (Welford). Feed values in a fixed order.
class MeanVar {
public:
    void add(double x) {
        ++n_;
        double d = x - mean_;
        mean_ += d / double(n_);
        m2_ += d * (x - mean_);
    }
    std::size_t n() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / double(n_ - 1) : 0.0; }
    double se() const { return n_ > 0 ? std::sqrt(variance() / double(n_)) : 0.0; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

inline MeanVar reduce_ordered(const std::vector<double>& per_index_values) {
    MeanVar mv;
    for (double v : per_index_values) {
        if (!std::isfinite(v)) throw std::runtime_error("non-finite path statistic");
        mv.add(v);
    }
    return mv;
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace levyconv
