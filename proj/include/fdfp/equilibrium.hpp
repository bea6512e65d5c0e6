#pragma once

#include "fdfp/grid.hpp"

namespace fdfp {

// F^beta(v) = 1 / (1 + beta exp(|v|^2/2)).
struct FermiDiracSpec {
    double beta = 1.0;
    int dim = 1;
};

// Logistic 1/(1+e^{-z}) evaluated without overflow.
double logistic(double z);

double fermi_dirac_eval(const FermiDiracSpec& spec, double speed);
// M(beta) on all of R^N by adaptive quadrature (relative tolerance 1e-10).
double mass_of_beta(const FermiDiracSpec& spec);
FermiDiracSpec beta_of_mass(double mass, int dim);
// H(F^beta) = S + E on all of R^N, used as the reference for relative entropy.
double free_energy_of_beta(const FermiDiracSpec& spec);

State equilibrium_state(double mass, const Grid& grid);
State equilibrium_state(double mass, std::shared_ptr<const Grid> grid);
State fermi_dirac_state(const FermiDiracSpec& spec, std::shared_ptr<const Grid> grid);

// max(min(f0, 1/(1+eps e^{|v|^2/2})), eps/(eps+e^{|v|^2/2})), pointwise.
State regularize_initial(const State& f0, double eps);

}  // namespace fdfp
