#include "fdfp/equilibrium.hpp"

#include "numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdfp {

namespace {

constexpr double kRelTol = 1e-10;

// log(1 + e^x)
double softplus(double x)
{
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

void check_spec(const FermiDiracSpec& spec)
{
    if (!(spec.beta > 0.0) || !std::isfinite(spec.beta))
        throw std::invalid_argument("beta must be positive and finite");
    if (spec.dim < 1) throw std::invalid_argument("dimension must be at least 1");
}

}  // namespace

double logistic(double z)
{
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double fermi_dirac_eval(const FermiDiracSpec& spec, double speed)
{
    check_spec(spec);
    if (speed < 0.0) throw std::invalid_argument("speed must be non-negative");
    return logistic(-(std::log(spec.beta) + 0.5 * speed * speed));
}

double mass_of_beta(const FermiDiracSpec& spec)
{
    check_spec(spec);
    const double lb = std::log(spec.beta);
    const int n = spec.dim;
    auto f = [lb, n](double r) { return std::pow(r, n - 1) * logistic(-(lb + 0.5 * r * r)); };
    return sphere_area(n) * detail::integrate_semi_infinite(f, 0.0, kRelTol);
}

FermiDiracSpec beta_of_mass(double mass, int dim)
{
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
    // Monotone decreasing in y = log(beta); grow a bracket from y = 0.
    auto g = [mass, dim](double y) { return mass_of_beta({std::exp(y), dim}) / mass - 1.0; };
    double lo = 0.0, hi = 0.0;
    const double g0 = g(0.0);
    if (g0 == 0.0) return {1.0, dim};
    double step = 1.0;
    if (g0 > 0.0) {
        // too much mass at beta = 1: increase beta
        for (;;) {
            hi = lo + step;
            if (g(hi) < 0.0) break;
            lo = hi;
            step *= 2.0;
            if (hi > 690.0) throw std::runtime_error("mass " + std::to_string(mass) + " is too small to bracket");
        }
    } else {
        for (;;) {
            lo = hi - step;
            if (g(lo) > 0.0) break;
            hi = lo;
            step *= 2.0;
            if (lo < -690.0) throw std::runtime_error("mass " + std::to_string(mass) + " is too large to bracket");
        }
    }
    const double y = detail::brent_root(g, lo, hi, 1e-13);
    return {std::exp(y), dim};
}

double free_energy_of_beta(const FermiDiracSpec& spec)
{
    check_spec(spec);
    const double lb = std::log(spec.beta);
    const int n = spec.dim;
    auto f = [lb, n](double r) {
        const double x = lb + 0.5 * r * r;
        const double F = logistic(-x);
        const double logF = -softplus(x);
        const double log1mF = -softplus(-x);
        const double s = (1.0 - F) * log1mF + F * logF;
        return std::pow(r, n - 1) * (s + 0.5 * r * r * F);
    };
    return sphere_area(n) * detail::integrate_semi_infinite(f, 0.0, kRelTol);
}

State fermi_dirac_state(const FermiDiracSpec& spec, std::shared_ptr<const Grid> grid)
{
    if (spec.dim != grid->dim) throw std::invalid_argument("equilibrium dimension does not match grid");
    std::vector<double> v(grid->cells);
    for (int i = 0; i < grid->cells; ++i) v[i] = fermi_dirac_eval(spec, std::abs(grid->node[i]));
    return make_state(std::move(grid), std::move(v));
}

State equilibrium_state(double mass, std::shared_ptr<const Grid> grid)
{
    const FermiDiracSpec spec = beta_of_mass(mass, grid->dim);
    return fermi_dirac_state(spec, std::move(grid));
}

State equilibrium_state(double mass, const Grid& grid)
{
    return equilibrium_state(mass, std::make_shared<const Grid>(grid));
}

State regularize_initial(const State& f0, double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    const double le = std::log(eps);
    std::vector<double> out(f0.size());
    for (std::size_t i = 0; i < f0.size(); ++i) {
        const double x = 0.5 * f0.grid->node[i] * f0.grid->node[i];
        const double upper = logistic(-(le + x));
        const double lower = logistic(le - x);
        out[i] = std::max(std::min(f0.values[i], upper), lower);
    }
    return make_state(f0.grid, std::move(out));
}

}  // namespace fdfp
