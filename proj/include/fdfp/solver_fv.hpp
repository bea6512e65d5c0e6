#pragma once

#include "fdfp/fit.hpp"
#include "fdfp/functionals.hpp"
#include "fdfp/trajectory.hpp"

#include <optional>
#include <vector>

namespace fdfp {

struct FvParams {
    double t_final = 1.0;
    double cfl_safety = 0.5;
    double clamp_delta = kClampDelta;
    int output_stride = 100;
    std::optional<double> dt_override;
    // Extra output times; steps are shortened to land on them exactly.
    std::vector<double> output_times;
    // Track H, extrema and mass after every step.
    bool monitor = true;
};
void validate(const FvParams& p);

// Interface fluxes J_{i+1/2}, i = -1..n-1 (n+1 entries, per unit face weight).
// Zero at both ends.
std::vector<double> interface_flux(const State& s);

// Largest forward-Euler step that keeps [0,1] invariant, times the safety factor.
double max_stable_dt(const Grid& grid, double cfl_safety);
double max_stable_dt(const State& s, const FvParams& p);

State step(const State& s, double dt);

// Runs to t_final. Relative entropy is measured against F of the given mass
// (default: the mass of f0).
Trajectory solve(const State& f0, const FvParams& p, std::optional<double> equilibrium_mass = std::nullopt);

struct ComparisonReport {
    double max_positive_part = 0.0;  // max over steps and cells of (f - g)+
    double max_l1_slack = 0.0;       // max over steps of |f-g|_1 - |f0-g0|_1
    long steps = 0;
};
ComparisonReport comparison_experiment(const State& f0, const State& g0, const FvParams& p);

struct DecayBound {
    double mass = 0.0;
    double m_star_mass = 0.0;
    double beta_star = 0.0;
    double rate_constant = 0.0;  // C = 1 - 1/(beta(M*) + 1)
};
DecayBound make_decay_bound(double mass, double m_star_mass, int dim);

// Relative entropy values at or below this floor are discretisation noise.
inline constexpr double kEntropyFloor = 1e-12;

struct DecayFitReport {
    bool at_equilibrium = false;
    ExponentialFit fit;
    double minus_two_c = 0.0;
    bool bound_satisfied = false;
    double worst_bound_ratio = 0.0;  // max over window of rel / (rel0 e^{-2Ct})
    int points = 0;
};
DecayFitReport decay_rate_fit(const Trajectory& traj, const DecayBound& bound, double t_lo, double t_hi);

struct MomentPropagationReport {
    std::vector<double> t_finals;
    std::vector<double> sup_moment;
    std::vector<double> sup_tail;
    double spread = 0.0;  // max/min - 1 of sup_moment across t_finals
    bool monotone_preserved = true;
    bool uniform = false;
};
bool is_non_increasing(const State& s, double tol = 1e-12);
MomentPropagationReport radial_moment_propagation(const State& f0, const FvParams& p, int order,
                                                  const std::vector<double>& t_finals);

}  // namespace fdfp
