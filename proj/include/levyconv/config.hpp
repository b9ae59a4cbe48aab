#pragma once

#include "levyconv/mark_space.hpp"
#include "levyconv/semigroup.hpp"
#include "levyconv/stochastic_integral.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace levyconv {

struct GridSpec {
    int time_points = 512;   // uniform time grid for path functionals
    int quad_panels = 64;    // Gauss-Legendre panels in norm quadratures
    int interp_table = 4096; // inverse-CDF table (fixed, recorded for the manifest)
};

// Fully resolved experiment. Only grid sizes have defaults; every physical
// parameter must appear in the JSON.
struct ExperimentConfig {
    std::vector<double> eigenvalues;
    std::shared_ptr<const IntensityMeasure> nu;
    StepIntegrand xi;
    double p = 2.0;
    double q = 2.0;
    double theta = 0.25;
    double horizon = 1.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    double martingale_constant = 1.0;  // L_p(E); 1 in the Hilbert case
    double norm_exponent = 2.0;
    GridSpec grid;
    nlohmann::json canonical;  // normalized echo of the parsed config

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);

    DiagonalGenerator generator() const { return DiagonalGenerator(eigenvalues); }
    std::string config_hash() const;  // FNV-1a over the canonical serialization
};

std::string fnv1a_hex(const std::string& bytes);

}  // namespace levyconv
