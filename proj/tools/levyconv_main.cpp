#include "levyconv/config.hpp"
#include "levyconv/convolution.hpp"
#include "levyconv/oracle.hpp"
#include "levyconv/parallel.hpp"
#include "levyconv/prm.hpp"
#include "levyconv/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr const char* TOOL_VERSION = "levyconv 1.0.0";

using levyconv::ExperimentConfig;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string suite = "all";
    int threads = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
};

ExperimentConfig load_config(const CommonArgs& args) {
    if (args.config_path.empty())
        throw std::invalid_argument("this subcommand needs --config <file>");
    std::ifstream in(args.config_path);
    if (!in) throw std::invalid_argument("cannot read config file: " + args.config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
    }
    if (args.seed) j["seed"] = *args.seed;
    if (args.paths) j["n_paths"] = *args.paths;
    return ExperimentConfig::from_json(j);
}

std::filesystem::path ensure_out_dir(const CommonArgs& args) {
    std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << text;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_sample(const CommonArgs& args) {
    ExperimentConfig cfg = load_config(args);
    auto dir = ensure_out_dir(args);
    levyconv::Rng rng(levyconv::child_seed(cfg.seed, 0));
    levyconv::AtomList atoms = levyconv::sample_prm(cfg.nu, cfg.horizon, rng);
    std::ofstream out(dir / "atoms.jsonl", std::ios::binary);
    atoms.write_jsonl(out);
    const levyconv::Window whole = levyconv::Window::time_slice(0.0, cfg.horizon);
    std::cout << "atoms " << atoms.atoms.size() << ", compensator "
              << format_double(levyconv::compensator(*cfg.nu, whole)) << ", file "
              << (dir / "atoms.jsonl").string() << "\n";
    return 0;
}

int run_convolve(const CommonArgs& args, const std::string& out_file) {
    ExperimentConfig cfg = load_config(args);
    auto dir = ensure_out_dir(args);
    levyconv::Rng rng(levyconv::child_seed(cfg.seed, 0));
    levyconv::AtomList atoms = levyconv::sample_prm(cfg.nu, cfg.horizon, rng);
    levyconv::DiagonalGenerator gen = cfg.generator();
    auto grid = levyconv::uniform_grid(cfg.horizon, cfg.grid.time_points);
    levyconv::ConvolutionPath path = levyconv::convolution_path(cfg.xi, atoms, *cfg.nu, gen, grid);

    std::filesystem::path file = out_file.empty() ? dir / "path.csv" : std::filesystem::path(out_file);
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "t";
    for (std::size_t k = 0; k < cfg.eigenvalues.size(); ++k) out << ",c" << (k + 1);
    out << "\n";
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        out << format_double(path.times[i]);
        for (double c : path.values[i].coeffs) out << "," << format_double(c);
        out << "\n";
    }
    std::cout << "wrote " << file.string() << " (" << path.times.size() << " rows)\n";
    return 0;
}

int run_verify(const CommonArgs& args) {
    ExperimentConfig cfg = load_config(args);
    auto dir = ensure_out_dir(args);
    const levyconv::ExecMode exec = levyconv::ExecMode::OpenMP;

    const std::vector<std::string> known = {"ito", "sup", "maxreg", "kernel", "all"};
    if (std::find(known.begin(), known.end(), args.suite) == known.end())
        throw std::invalid_argument("unknown suite '" + args.suite +
                                    "' (expected ito, sup, maxreg, kernel, or all)");

    std::vector<levyconv::RatioReport> reports;
    nlohmann::json checks = nlohmann::json::array();
    nlohmann::json timings;
    bool all_passed = true;

    auto timed = [&](const std::string& id, auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        timings[id] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    };

    const bool want = true;
    if (args.suite == "ito" || (args.suite == "all" && cfg.q == cfg.p)) {
        timed("ito-bound", [&] {
            levyconv::RatioReport r = levyconv::check_ito_bound(cfg, exec);
            all_passed = all_passed && r.passed;
            checks.push_back(levyconv::report_to_json(r));
            reports.push_back(std::move(r));
        });
    }
    if (args.suite == "sup" || (args.suite == "all" && cfg.q < cfg.p)) {
        timed("sup-bound", [&] {
            levyconv::RatioReport r = levyconv::check_low_moment_bound(cfg, exec);
            all_passed = all_passed && r.passed;
            checks.push_back(levyconv::report_to_json(r));
            reports.push_back(std::move(r));
        });
    }
    if (args.suite == "maxreg" || (args.suite == "all" && cfg.theta < 1.0 - 1.0 / cfg.p)) {
        timed("maximal-regularity", [&] {
            levyconv::RatioReport r = levyconv::check_maximal_regularity(cfg, exec);
            all_passed = all_passed && r.passed;
            checks.push_back(levyconv::report_to_json(r));
            reports.push_back(std::move(r));
        });
    }
    if ((args.suite == "kernel" || args.suite == "all") && want) {
        timed("kernel-lemma", [&] {
            // Standard deterministic grid; independent of the config's (p, q).
            const std::vector<double> ts = {0.01, 0.1, 1.0, 10.0};
            const std::vector<double> ss = {0.01, 0.1, 0.5, 0.9};
            for (auto [kp, kq] : {std::pair{1.5, 2.0}, std::pair{1.25, 1.75}}) {
                levyconv::KernelLemmaReport kr = levyconv::check_kernel_lemma(kp, kq, ts, ss);
                all_passed = all_passed && kr.passed;
                checks.push_back(levyconv::kernel_report_to_json(kr));
                std::printf("kernel-lemma p=%.4g q=%.4g: %zu nodes, %s\n", kp, kq,
                            kr.nodes.size(), kr.passed ? "pass" : "FAIL");
            }
        });
    }

    nlohmann::json report{{"config", cfg.canonical},
                          {"config_hash", cfg.config_hash()},
                          {"suite", args.suite},
                          {"checks", checks},
                          {"passed", all_passed}};
    write_text(dir / "report.json", report.dump(2) + "\n");

    nlohmann::json manifest_checks = nlohmann::json::array();
    for (const auto& c : checks)
        manifest_checks.push_back({{"id", c.at("id")}, {"passed", c.at("passed")}});
    nlohmann::json manifest{{"config_hash", cfg.config_hash()},
                            {"tool_version", TOOL_VERSION},
                            {"seed", cfg.seed},
                            {"threads", levyconv::hardware_threads()},
                            {"checks", manifest_checks},
                            {"timings_ms", timings}};
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << levyconv::format_report_table(reports);
    std::cout << (all_passed ? "all checks passed" : "CHECK FAILURES") << " -> "
              << (dir / "report.json").string() << "\n";
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(TOOL_VERSION) +
                 " - compensated-Poisson stochastic convolution harness"};
    app.fallthrough();
    app.require_subcommand(1);

    CommonArgs args;
    app.add_option("--config", args.config_path, "experiment config (JSON)");
    app.add_option("--out-dir", args.out_dir, "output directory (default .)");
    app.add_option("--threads", args.threads, "worker threads (0 = library default)");
    std::uint64_t seed_val = 0;
    std::size_t paths_val = 0;
    auto* seed_opt = app.add_option("--seed", seed_val, "override config seed");
    auto* paths_opt = app.add_option("--paths", paths_val, "override config n_paths");

    CLI::App* sample = app.add_subcommand("sample", "draw one atom realization -> atoms.jsonl");
    CLI::App* convolve = app.add_subcommand("convolve", "one convolution path -> CSV");
    std::string out_file;
    convolve->add_option("--out", out_file, "CSV output file (default <out-dir>/path.csv)");
    CLI::App* verify = app.add_subcommand("verify", "run inequality checks -> report.json");
    verify->add_option("--suite", args.suite, "ito | sup | maxreg | kernel | all");
    CLI::App* oracle = app.add_subcommand("oracle", "closed-form reference values");
    oracle->require_subcommand(1);
    CLI::App* pm = oracle->add_subcommand("poisson-moment", "E|X - lambda|^p for X ~ Poisson");
    double pm_lambda = 0.0, pm_p = 1.0;
    pm->add_option("--lambda", pm_lambda, "Poisson rate")->required();
    pm->add_option("--p", pm_p, "moment order in [1,2]")->required();
    CLI::App* all = app.add_subcommand("all", "sample + convolve + verify");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*seed_opt) args.seed = seed_val;
    if (*paths_opt) args.paths = paths_val;
    levyconv::set_thread_count(args.threads);

    try {
        if (*pm) {
            levyconv::OracleResult r = levyconv::oracle_poisson_moment(pm_lambda, pm_p);
            std::printf("%.17g\n", r.value);
            return 0;
        }
        if (*sample) return run_sample(args);
        if (*convolve) return run_convolve(args, out_file);
        if (*verify) return run_verify(args);
        if (*all) {
            int rc = run_sample(args);
            if (rc == 0) rc = run_convolve(args, "");
            if (rc == 0) rc = run_verify(args);
            return rc;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
