#pragma once

#include "fdfp/functionals.hpp"
#include "fdfp/grid.hpp"

#include <stdexcept>
#include <vector>

namespace fdfp {

// Raised when a solver cannot produce a trustworthy answer (step too large,
// Picard iteration not contracting, ...).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-step observations gathered while a solver runs, so that properties
// can be checked between output times too.
struct StepMonitor {
    long steps = 0;
    double min_value = 1.0;
    double max_value = 0.0;
    double max_entropy_increase = -1e300;  // max over steps of H_{k+1} - H_k
    double max_mass_drift = 0.0;           // relative to the initial mass
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<DiagnosticsRow> diagnostics;
    StepMonitor monitor;
};

}  // namespace fdfp
