#include "fdfp/functionals.hpp"

#include "flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fdfp {

double entropy_density(double r)
{
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("entropy density needs r in [0,1]");
    double s = 0.0;
    if (r > 0.0) s += r * std::log(r);
    if (r < 1.0) s += (1.0 - r) * std::log1p(-r);
    return s;
}

double entropy(const State& s)
{
    double S = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) S += s.grid->qweight[i] * entropy_density(s.values[i]);
    return S;
}

double kinetic_energy(const State& s)
{
    return 0.5 * moment(s, 2);
}

double free_energy(const State& s)
{
    return entropy(s) + kinetic_energy(s);
}

double interface_mobility(double fi, double fj, double dpot)
{
    return detail::face_terms(fi, fj, dpot).mobility;
}

std::vector<double> discrete_potential(const State& s, double delta)
{
    std::vector<double> xi(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = std::clamp(s.values[i], delta, 1.0 - delta);
        const double v = s.grid->node[i];
        xi[i] = 0.5 * v * v + std::log(f) - std::log1p(-f);
    }
    return xi;
}

double dissipation(const State& s)
{
    const Grid& g = *s.grid;
    const auto xi = discrete_potential(s);
    double D = 0.0;
    for (int i = 0; i + 1 < g.cells; ++i) {
        const double a = g.node[i], b = g.node[i + 1];
        const double mu = interface_mobility(s.values[i], s.values[i + 1], 0.5 * (b * b - a * a));
        const double grad = (xi[i + 1] - xi[i]) / g.h;
        D += g.face_weight[i + 1] * g.h * mu * grad * grad;
    }
    return D;
}

EquilibriumReference make_reference(double mass, std::shared_ptr<const Grid> grid)
{
    EquilibriumReference ref;
    ref.mass = mass;
    if (mass == 0.0) {
        // F_0 is identically zero
        ref.spec = {std::numeric_limits<double>::infinity(), grid->dim};
        const auto cells = static_cast<std::size_t>(grid->cells);
        ref.sampled = make_state(std::move(grid), std::vector<double>(cells, 0.0));
        return ref;
    }
    ref.spec = beta_of_mass(mass, grid->dim);
    ref.free_energy = free_energy_of_beta(ref.spec);
    ref.sampled = fermi_dirac_state(ref.spec, std::move(grid));
    return ref;
}

RelativeEntropy relative_entropy(const State& s, const EquilibriumReference& ref)
{
    RelativeEntropy r;
    r.value = free_energy(s) - ref.free_energy;
    r.mass_mismatch = std::abs(integrate(s) - ref.mass) > 0.01 * ref.mass;
    return r;
}

RelativeEntropy relative_entropy(const State& s, double mass)
{
    if (!(mass > 0.0)) throw std::invalid_argument("relative entropy needs a positive mass");
    return relative_entropy(s, make_reference(mass, s.grid));
}

DiagnosticsRow diagnostics(const State& s, double time, const EquilibriumReference& ref)
{
    DiagnosticsRow row;
    row.time = time;
    row.mass = integrate(s);
    row.energy = kinetic_energy(s);
    row.entropy = entropy(s);
    row.free_energy = row.entropy + row.energy;
    row.dissipation = dissipation(s);
    row.rel_entropy = row.free_energy - ref.free_energy;
    row.l1_to_eq = l1_distance(s, ref.sampled);
    return row;
}

double entropy_control_constant(double eps, int dim)
{
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    return std::pow(2.0 * std::numbers::pi / eps, 0.5 * dim);
}

EntropyControlReport check_entropy_control(const State& s, double eps)
{
    EntropyControlReport rep;
    const double c_eps = entropy_control_constant(eps, s.grid->dim);
    rep.max_pointwise_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double v2 = s.grid->node[i] * s.grid->node[i];
        const double g = s.values[i];
        const double lhs = -entropy_density(g);
        const double rhs = 0.5 * eps * v2 * g + std::exp(-0.5 * eps * v2);
        rep.max_pointwise_violation = std::max(rep.max_pointwise_violation, lhs - rhs);
    }
    rep.minus_entropy = -entropy(s);
    rep.bound = eps * kinetic_energy(s) + c_eps;
    rep.holds = rep.max_pointwise_violation <= 1e-12 && rep.minus_entropy >= 0.0 && rep.minus_entropy <= rep.bound;
    return rep;
}

CsiszarKullback csiszar_kullback_check(const State& s, const EquilibriumReference& ref)
{
    CsiszarKullback ck;
    const double d = l1_distance(s, ref.sampled);
    ck.lhs = d * d;
    ck.rhs = 2.0 * ref.mass * (free_energy(s) - ref.free_energy);
    ck.holds = ck.lhs <= ck.rhs * (1.0 + 1e-6) + 1e-10;
    return ck;
}

CsiszarKullback csiszar_kullback_check(const State& s, double mass)
{
    return csiszar_kullback_check(s, make_reference(mass, s.grid));
}

double MomentBoundPolynomial::operator()(double t) const
{
    double p = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * t + *it;
    return p;
}

MomentBoundPolynomial moment_bound_polynomial(int gamma, const std::vector<double>& initial_moments, double mass,
                                              int dim)
{
    if (gamma < 1) throw std::invalid_argument("gamma must be at least 1");
    if (initial_moments.size() < static_cast<std::size_t>(gamma) + 1)
        throw std::invalid_argument("need initial moments of orders 0..2*gamma");
    std::vector<double> p{initial_moments[1], 2.0 * dim * mass};
    for (int g = 2; g <= gamma; ++g) {
        const double factor = 2.0 * g * (2.0 * (g - 1) + dim);
        std::vector<double> next(p.size() + 1, 0.0);
        next[0] = initial_moments[g];
        for (std::size_t k = 0; k < p.size(); ++k) next[k + 1] = factor * p[k] / static_cast<double>(k + 1);
        p = std::move(next);
    }
    return {gamma, std::move(p)};
}

double energy_bound(const State& f0)
{
    return 2.0 * (entropy_control_constant(0.5, f0.grid->dim) + free_energy(f0));
}

}  // namespace fdfp
