#pragma once

#include "fdfp/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fdfp {

State build_initial(const InitialSpec& spec, std::shared_ptr<const Grid> grid);

// Fixed test functions for the kernel bound sweep.
std::vector<double> kernel_test_function(const std::string& name, const Grid& grid);

struct ExperimentOutcome {
    std::string name;
    bool passed = false;
    std::string summary;
};

struct ScenarioResult {
    std::vector<ExperimentOutcome> experiments;
    bool all_passed() const;
};

struct RunOptions {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::ostream* log = nullptr;  // progress lines; null for quiet
};

// Writes diagnostics.csv, snapshots and report_<name>.csv files.
ScenarioResult run_scenario(ScenarioConfig cfg, const RunOptions& opts = {});

enum ExitCode { kExitOk = 0, kExitAssertion = 1, kExitUsage = 2, kExitSolver = 3 };

}  // namespace fdfp
