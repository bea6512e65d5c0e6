#include "fdfp/scenario.hpp"
#include "fdfp/snapshot.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

using namespace fdfp;

namespace {

int print_config_error(const ConfigError& e)
{
    std::cerr << "fdfp: " << e.errors.size() << " configuration error(s):\n";
    for (const auto& msg : e.errors) std::cerr << "  " << msg << '\n';
    return kExitUsage;
}

int cmd_run(const std::string& path, const std::string& out_dir, std::optional<long long> seed, bool quiet)
{
    ScenarioConfig cfg;
    try {
        cfg = load_config(path);
    } catch (const ConfigError& e) {
        return print_config_error(e);
    }
    RunOptions opts;
    if (!out_dir.empty()) opts.output_dir = out_dir;
    if (seed) {
        if (*seed < 0) {
            std::cerr << "fdfp: --seed must be non-negative\n";
            return kExitUsage;
        }
        opts.seed = static_cast<std::uint64_t>(*seed);
    }
    if (!quiet) opts.log = &std::cout;
    try {
        const ScenarioResult r = run_scenario(cfg, opts);
        if (!r.all_passed()) {
            for (const auto& e : r.experiments)
                if (!e.passed) std::cerr << "fdfp: experiment " << e.name << " failed: " << e.summary << '\n';
            return kExitAssertion;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        return print_config_error(e);
    } catch (const SolverError& e) {
        std::cerr << "fdfp: solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fdfp: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "fdfp: solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}

int cmd_check(const std::string& path)
{
    try {
        const ScenarioConfig cfg = load_config(path);
        std::cout << "ok: " << to_string(cfg.geometry) << " grid, " << cfg.cells << " cells, solver " << cfg.solver
                  << ", " << cfg.experiments.size() << " experiment(s)\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        return print_config_error(e);
    }
}

int cmd_snapshot_info(const std::string& path)
{
    try {
        const SnapshotData d = read_snapshot(path);
        double mass = 0.0;
        std::string note;
        try {
            mass = integrate(snapshot_state(d));
        } catch (const std::exception& e) {
            note = e.what();
        }
        std::cout << "geometry: " << to_string(d.geometry) << '\n'
                  << "dim: " << d.dim << '\n'
                  << "cells: " << d.cells << '\n'
                  << "extent: " << format_double(d.extent) << '\n'
                  << "time: " << format_double(d.time) << '\n';
        if (note.empty())
            std::cout << "mass: " << format_double(mass) << '\n';
        else
            std::cout << "mass: unavailable (" << note << ")\n";
        if (!d.values.empty()) {
            const auto [lo, hi] = std::minmax_element(d.values.begin(), d.values.end());
            std::cout << "min: " << format_double(*lo) << '\n' << "max: " << format_double(*hi) << '\n';
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "fdfp: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"fdfp: Fermi-Dirac-Fokker-Planck scenario runner"};
    app.require_subcommand(1);

    std::string run_cfg, out_dir;
    std::optional<long long> seed;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "run a scenario and its experiments");
    run->add_option("config", run_cfg, "scenario file")->required();
    run->add_option("--output-dir", out_dir, "override the output directory");
    run->add_option("--seed", seed, "override the fuzzing seed");
    run->add_flag("--quiet", quiet, "suppress progress output");

    std::string check_cfg;
    auto* check = app.add_subcommand("check", "parse and validate a scenario file");
    check->add_option("config", check_cfg, "scenario file")->required();

    std::string snap;
    auto* info = app.add_subcommand("snapshot-info", "summarise a snapshot file");
    info->add_option("path", snap, "snapshot file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*run) return cmd_run(run_cfg, out_dir, seed, quiet);
    if (*check) return cmd_check(check_cfg);
    return cmd_snapshot_info(snap);
}
