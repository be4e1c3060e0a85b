// noonmap command-line front end.
//
//   noonmap simulate --config run.yaml
//   noonmap experiment fig3 --out-dir out [--cutoff N] [--tolerance x]
//   noonmap --list-experiments
//
// Exit codes: 0 success, 1 numerical or tolerance failure, 2 usage/config error.

#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "noonmap/io/config.hpp"
#include "noonmap/io/experiments.hpp"

#ifndef NOONMAP_VERSION
#define NOONMAP_VERSION "0.0.0"
#endif

namespace {

int run_simulate(const std::string& path) {
    try {
        const auto cfg = noonmap::io::load_config(path);
        noonmap::io::run_config(cfg);
        return 0;
    } catch (const noonmap::io::ConfigError& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return 2;
    } catch (const noonmap::Error& e) {
        std::cerr << "simulate: " << e.what() << '\n';
        return 1;
    }
}

int run_experiment(const std::string& name, const noonmap::io::ExperimentOptions& opt) {
    if (!noonmap::io::experiments().count(name)) {
        std::cerr << "unknown experiment '" << name << "'; see --list-experiments\n";
        return 2;
    }
    try {
        const auto r = noonmap::io::run_named_experiment(name, opt);
        for (const auto& c : r.checks)
            std::cout << fmt::format("{:<4} {:<34} {:>12.4e}  (tol {:.1e}){}\n", c.passed ? "ok" : "FAIL", c.name,
                                     c.value, c.tolerance, c.note.empty() ? "" : "  " + c.note);
        std::cout << name << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
        return r.passed() ? 0 : 1;
    } catch (const noonmap::Error& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode Fock-space interferometry: ANLMZI, eHOM and inverse design"};
    app.set_version_flag("--version", NOONMAP_VERSION);
    bool list = false;
    app.add_flag("--list-experiments", list, "List named experiments");

    auto* sim = app.add_subcommand("simulate", "Run a YAML experiment config");
    std::string config;
    sim->add_option("--config", config, "Config file")->required();

    auto* exp = app.add_subcommand("experiment", "Run a named reproduction");
    std::string name;
    noonmap::io::ExperimentOptions opt;
    std::string out_dir = ".";
    std::optional<int> cutoff;
    std::optional<double> tolerance;
    exp->add_option("name", name, "Experiment name")->required();
    exp->add_option("--out-dir", out_dir, "Output directory");
    exp->add_option("--cutoff", cutoff, "Override the cutoff (or range bound)");
    exp->add_option("--tolerance", tolerance, "Override continuous tolerances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list) {
        for (const auto& [k, v] : noonmap::io::experiments()) std::cout << k << '\n';
        return 0;
    }
    if (*sim) return run_simulate(config);
    if (*exp) {
        opt.out_dir = out_dir;
        opt.cutoff = cutoff;
        opt.tolerance = tolerance;
        return run_experiment(name, opt);
    }
    std::cerr << app.help();
    return 2;
}
