#pragma once

#include "fdfp/equilibrium.hpp"
#include "fdfp/grid.hpp"

#include <vector>

namespace fdfp {

// Clamp applied before evaluating s'(f) = log(f/(1-f)).
inline constexpr double kClampDelta = 1e-14;

double entropy_density(double r);
double entropy(const State& s);
double kinetic_energy(const State& s);
double free_energy(const State& s);

// Mobility at the face between cells holding fi and fj whose potentials
// |v|^2/2 differ by dpot (right minus left); 0 when either side is 0 or 1.
double interface_mobility(double fi, double fj, double dpot);
// xi = |v|^2/2 + s'(f) with the clamp above.
std::vector<double> discrete_potential(const State& s, double delta = kClampDelta);
double dissipation(const State& s);

// Everything needed to compare a trajectory against F_M of a fixed mass.
struct EquilibriumReference {
    double mass = 0.0;
    FermiDiracSpec spec;
    double free_energy = 0.0;  // H(F_M) on all of R^N
    State sampled;             // F_M at the grid nodes
};
EquilibriumReference make_reference(double mass, std::shared_ptr<const Grid> grid);

struct RelativeEntropy {
    double value = 0.0;
    bool mass_mismatch = false;  // integrate(state) differs from mass by more than 1%
};
RelativeEntropy relative_entropy(const State& s, double mass);
RelativeEntropy relative_entropy(const State& s, const EquilibriumReference& ref);

struct DiagnosticsRow {
    double time = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double entropy = 0.0;
    double free_energy = 0.0;
    double dissipation = 0.0;
    double rel_entropy = 0.0;
    double l1_to_eq = 0.0;
};
DiagnosticsRow diagnostics(const State& s, double time, const EquilibriumReference& ref);

double entropy_control_constant(double eps, int dim);

struct EntropyControlReport {
    double max_pointwise_violation = 0.0;
    double minus_entropy = 0.0;
    double bound = 0.0;  // eps E + C_eps
    bool holds = false;
};
EntropyControlReport check_entropy_control(const State& s, double eps);

struct CsiszarKullback {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};
CsiszarKullback csiszar_kullback_check(const State& s, double mass);
CsiszarKullback csiszar_kullback_check(const State& s, const EquilibriumReference& ref);

struct MomentBoundPolynomial {
    int gamma = 1;
    std::vector<double> coeffs;  // ascending powers of t
    double operator()(double t) const;
};
// initial_moments[k] is the 2k-th moment of f0, k = 0..gamma (entry 0 is unused).
MomentBoundPolynomial moment_bound_polynomial(int gamma, const std::vector<double>& initial_moments, double mass,
                                              int dim);

// Energy bound 2 (C_{1/2} + H(f0)).
double energy_bound(const State& f0);

}  // namespace fdfp
