#pragma once

#include "fdfp/trajectory.hpp"

#include <vector>

namespace fdfp {

struct DuhamelParams {
    double t_final = 0.25;
    int time_nodes = 16;
    double picard_tol = 1e-8;
    int picard_max_iter = 50;
    int singular_quad_nodes = 32;
};
void validate(const DuhamelParams& p);

// Uniform time grid t_k = k t_final / time_nodes, k = 0..time_nodes.
std::vector<double> duhamel_times(const DuhamelParams& p);

// One application of the mild-form map
//   T[f](t) = F(t)[f0] - int_0^t e^{-(t-s)} dv F(t-s)[w f(s)^2] ds
// to a trajectory on the time grid of p. States are not range-checked.
Trajectory apply_T(const Trajectory& f, const State& f0, const DuhamelParams& p);

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> increments;  // sup_t L1 distance between consecutive iterates
    int iterations = 0;
    double range_violation = 0.0;  // how far the converged values leave [0,1]
};
// Throws SolverError when the iteration stops contracting or runs out of iterations.
PicardResult picard_solve(const State& f0, const DuhamelParams& p);

}  // namespace fdfp
