#include "levyconv/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace levyconv {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const std::string& expected) {
    throw std::invalid_argument("config key '" + key + "': expected " + expected);
}

const json& require(const json& j, const std::string& path, const std::string& key,
                    const std::string& expected) {
    std::string full = path.empty() ? key : path + "." + key;
    if (!j.is_object() || !j.contains(key)) bad_key(full, expected + " (missing)");
    return j.at(key);
}

double number_in(const json& j, const std::string& key, double lo, double hi, bool lo_open,
                 bool hi_open) {
    if (!j.is_number()) bad_key(key, "a number");
    double v = j.get<double>();
    bool ok = (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
    if (!ok || !std::isfinite(v)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "a number in %c%g, %g%c", lo_open ? '(' : '[', lo, hi,
                      hi_open ? ')' : ']');
        bad_key(key, buf);
    }
    return v;
}

std::vector<double> number_array(const json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) bad_key(key, "a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& e : j) {
        if (!e.is_number()) bad_key(key, "a nonempty array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<double> parse_generator(const json& g) {
    if (!g.is_object()) bad_key("generator", "an object");
    if (g.contains("eigenvalues")) {
        auto lam = number_array(g.at("eigenvalues"), "generator.eigenvalues");
        for (double l : lam)
            if (!(l > 0.0)) bad_key("generator.eigenvalues", "strictly positive entries");
        return lam;
    }
    if (g.contains("family")) {
        if (!g.at("family").is_string() || g.at("family").get<std::string>() != "laplacian_1d")
            bad_key("generator.family", "\"laplacian_1d\"");
        const json& nj = require(g, "generator", "n", "an integer >= 1");
        if (!nj.is_number_integer() || nj.get<long long>() < 1)
            bad_key("generator.n", "an integer >= 1");
        return DiagonalGenerator::laplacian_1d(std::size_t(nj.get<long long>())).lambda;
    }
    bad_key("generator", "either 'eigenvalues' or 'family'");
}

std::shared_ptr<const IntensityMeasure> parse_intensity(const json& in, json& canon) {
    if (!in.is_object()) bad_key("intensity", "an object");
    if (in.contains("marks")) {
        const json& mj = in.at("marks");
        if (!mj.is_array() || mj.empty()) bad_key("intensity.marks", "a nonempty array of strings");
        std::vector<std::string> labels;
        for (const auto& e : mj) {
            if (!e.is_string()) bad_key("intensity.marks", "a nonempty array of strings");
            labels.push_back(e.get<std::string>());
        }
        auto weights = number_array(require(in, "intensity", "weights", "an array of numbers"),
                                    "intensity.weights");
        if (weights.size() != labels.size())
            bad_key("intensity.weights", "one weight per mark");
        for (double w : weights)
            if (!(w >= 0.0)) bad_key("intensity.weights", "nonnegative entries");
        canon = json{{"marks", labels}, {"weights", weights}};
        return std::make_shared<IntensityMeasure>(IntensityMeasure::finite(labels, weights));
    }
    if (in.contains("eps")) {
        double eps = number_in(require(in, "intensity", "eps", "a number in (0,1)"),
                               "intensity.eps", 0.0, 1.0, true, true);
        const json& dj = require(in, "intensity", "density", "an object with a 'form'");
        if (!dj.is_object()) bad_key("intensity.density", "an object with a 'form'");
        std::string form =
            require(dj, "intensity.density", "form", "\"power\" or \"uniform\"").get<std::string>();
        double c = number_in(require(dj, "intensity.density", "c", "a positive number"),
                             "intensity.density.c", 0.0, 1e300, true, false);
        double a = 0.0;
        if (form == "power") {
            const json& aj = require(dj, "intensity.density", "a", "a number");
            if (!aj.is_number()) bad_key("intensity.density.a", "a number");
            a = aj.get<double>();
        } else if (form != "uniform") {
            bad_key("intensity.density.form", "\"power\" or \"uniform\"");
        }
        canon = json{{"eps", eps}, {"density", {{"form", form}, {"c", c}}}};
        if (form == "power") canon["density"]["a"] = a;
        auto density = [c, a](double x) { return c * std::pow(x, a); };
        return std::make_shared<IntensityMeasure>(IntensityMeasure::interval(eps, density));
    }
    bad_key("intensity", "either 'marks'/'weights' or 'eps'/'density'");
}

StepIntegrand parse_integrand(const json& ij, const IntensityMeasure& nu, std::size_t dim,
                              double horizon, double norm_exponent, json& canon) {
    if (!ij.is_object()) bad_key("integrand", "an object");
    auto partition = number_array(
        require(ij, "integrand", "partition", "an increasing array starting at 0"),
        "integrand.partition");
    const json& vj = require(ij, "integrand", "values", "an array of coefficient arrays");
    if (!vj.is_array() || vj.empty()) bad_key("integrand.values", "an array of coefficient arrays");
    std::vector<ModelVector> vectors;
    for (std::size_t j = 0; j < vj.size(); ++j) {
        auto v = number_array(vj.at(j), "integrand.values[" + std::to_string(j) + "]");
        if (v.size() != dim)
            bad_key("integrand.values[" + std::to_string(j) + "]",
                    "one coefficient per generator mode");
        vectors.emplace_back(v, norm_exponent);
    }

    json values_canon = json::array();
    for (const ModelVector& v : vectors) values_canon.push_back(v.coeffs);

    std::vector<std::function<double(const Mark&)>> factors;
    canon = json{{"partition", partition}, {"values", values_canon}};
    if (nu.kind() == MarkKind::Finite) {
        std::vector<double> mw(nu.space().labels.size(), 1.0);
        if (ij.contains("mark_weights")) {
            mw = number_array(ij.at("mark_weights"), "integrand.mark_weights");
            if (mw.size() != nu.space().labels.size())
                bad_key("integrand.mark_weights", "one weight per mark");
        }
        canon["mark_weights"] = mw;
        for (std::size_t j = 0; j < vectors.size(); ++j)
            factors.push_back([mw](const Mark& x) { return mw.at(x.index); });
    } else {
        double a = 0.0;
        if (ij.contains("mark_power")) {
            if (!ij.at("mark_power").is_number()) bad_key("integrand.mark_power", "a number");
            a = ij.at("mark_power").get<double>();
        }
        canon["mark_power"] = a;
        for (std::size_t j = 0; j < vectors.size(); ++j)
            factors.push_back([a](const Mark& x) { return std::pow(x.point, a); });
    }

    try {
        return StepIntegrand::separable(partition, factors, vectors, horizon);
    } catch (const std::invalid_argument& e) {
        bad_key("integrand", std::string("a valid step integrand (") + e.what() + ")");
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config root: expected a JSON object");
    ExperimentConfig cfg;

    cfg.eigenvalues = parse_generator(require(j, "", "generator", "an object"));
    json intensity_canon;
    cfg.nu = parse_intensity(require(j, "", "intensity", "an object"), intensity_canon);

    cfg.p = number_in(require(j, "", "p", "a number in (1,2]"), "p", 1.0, 2.0, true, false);
    cfg.q = number_in(require(j, "", "q", "a number >= 1"), "q", 1.0, 1e300, false, true);
    cfg.theta = number_in(require(j, "", "theta", "a number in (0,1)"), "theta", 0.0, 1.0, true,
                          true);
    cfg.horizon = number_in(require(j, "", "horizon", "a positive number"), "horizon", 0.0, 1e300,
                            true, true);
    double np = number_in(require(j, "", "n_paths", "an integer >= 100"), "n_paths", 100.0, 1e12,
                          false, true);
    cfg.n_paths = std::size_t(np);
    const json& sj = require(j, "", "seed", "an unsigned integer");
    if (!sj.is_number_unsigned() && !sj.is_number_integer()) bad_key("seed", "an unsigned integer");
    if (sj.is_number_integer() && sj.get<long long>() < 0) bad_key("seed", "an unsigned integer");
    cfg.seed = sj.get<std::uint64_t>();
    cfg.martingale_constant = number_in(
        require(j, "", "martingale_constant", "a positive number"), "martingale_constant", 0.0,
        1e300, true, true);
    cfg.norm_exponent = number_in(require(j, "", "norm_exponent", "a number >= 1"),
                                  "norm_exponent", 1.0, 1e300, false, true);
    if (cfg.norm_exponent < cfg.p)
        bad_key("norm_exponent", "at least p (martingale type p needs r >= p)");

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (!g.is_object()) bad_key("grid", "an object");
        if (g.contains("time_points")) {
            double tp = number_in(g.at("time_points"), "grid.time_points", 2.0, 1e9, false, true);
            cfg.grid.time_points = int(tp);
        }
        if (g.contains("quad_panels")) {
            double qp = number_in(g.at("quad_panels"), "grid.quad_panels", 1.0, 1e7, false, true);
            cfg.grid.quad_panels = int(qp);
        }
    }

    json integrand_canon;
    cfg.xi = parse_integrand(require(j, "", "integrand", "an object"), *cfg.nu,
                             cfg.eigenvalues.size(), cfg.horizon, cfg.norm_exponent,
                             integrand_canon);

    cfg.canonical = json{{"generator", {{"eigenvalues", cfg.eigenvalues}}},
                         {"intensity", intensity_canon},
                         {"integrand", integrand_canon},
                         {"p", cfg.p},
                         {"q", cfg.q},
                         {"theta", cfg.theta},
                         {"horizon", cfg.horizon},
                         {"n_paths", cfg.n_paths},
                         {"seed", cfg.seed},
                         {"martingale_constant", cfg.martingale_constant},
                         {"norm_exponent", cfg.norm_exponent},
                         {"grid",
                          {{"time_points", cfg.grid.time_points},
                           {"quad_panels", cfg.grid.quad_panels},
                           {"interp_table", cfg.grid.interp_table}}}};
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
    }
    return from_json(j);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string ExperimentConfig::config_hash() const { return fnv1a_hex(canonical.dump()); }

}  // namespace levyconv
