#pragma once

#include "fdfp/mehler.hpp"
#include "fdfp/solver_duhamel.hpp"
#include "fdfp/solver_fv.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdfp {

// All problems found in a configuration, one message per entry.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> errors);
    std::vector<std::string> errors;
};

struct InitialSpec {
    std::string kind;  // fermi_dirac, scaled_fermi_dirac, indicator, gaussian_profile, from_snapshot
    double mass = 0.0;
    double mass_star = 0.0;
    double factor = 1.0;
    double lo = 0.0;
    double hi = 0.0;
    double height = 1.0;
    double sigma = 1.0;
    std::string path;
};

struct ExperimentSpec {
    std::string kind;  // run, comparison, decay_fit, moment_propagation, kernel_bounds, entropy_control, cross_check
    std::string name;  // report file stem; defaults to kind
    InitialSpec other;  // comparison
    double window_lo = 0.0, window_hi = 0.0;
    std::optional<double> mass_star;  // decay_fit
    int order = 4;
    std::vector<double> t_finals{10.0, 20.0, 40.0};
    std::vector<AppendixBoundSpec> cases;  // kernel_bounds
    std::vector<std::string> functions{"gaussian", "indicator", "fermi_dirac"};
    double t_min = 0.01, t_max = 2.0;
    int samples = 25;
    double max_spread = 10.0;
    std::vector<double> eps{0.1, 0.5, 0.9};
    int trials = 1000;
    double tolerance = 1e-2;  // cross_check
};

struct ScenarioConfig {
    Geometry geometry = Geometry::cartesian1d;
    int dim = 1;
    double extent = 8.0;
    int cells = 256;
    InitialSpec initial;
    std::string solver = "fv";
    FvParams fv;
    DuhamelParams duhamel;
    std::vector<ExperimentSpec> experiments;
    std::string output_dir = "fdfp_out";
    std::vector<double> snapshot_times;
    std::uint64_t seed = 1;
};

// base_dir resolves relative snapshot paths.
ScenarioConfig parse_config(const std::string& text, const std::string& base_dir = "");
ScenarioConfig load_config(const std::string& path);

std::vector<AppendixBoundSpec> full_bound_matrix();

std::size_t edit_distance(const std::string& a, const std::string& b);

}  // namespace fdfp
