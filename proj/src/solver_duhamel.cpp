#include "fdfp/solver_duhamel.hpp"

#include "fdfp/mehler.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fdfp {

namespace {

using Field = std::vector<double>;

// Precomputed pieces of T shared by every Picard sweep.
struct MildMap {
    const Grid& g;
    DuhamelParams p;
    std::vector<double> times;
    std::vector<Field> linear;  // F(t_k)[f0]
    detail::GaussRule rule;

    MildMap(const State& f0, const DuhamelParams& params)
        : g(*f0.grid), p(params), times(duhamel_times(params)), rule(detail::gauss_legendre(params.singular_quad_nodes))
    {
        linear.push_back(f0.values);
        for (std::size_t k = 1; k < times.size(); ++k) linear.push_back(apply_kernel(times[k], g, f0.values));
    }

    Field at(const std::vector<Field>& traj, double s) const
    {
        const double dt = p.t_final / p.time_nodes;
        int i = std::min(static_cast<int>(s / dt), p.time_nodes - 1);
        i = std::max(i, 0);
        const double a = (s - times[i]) / (times[i + 1] - times[i]);
        Field out(g.cells);
        for (int j = 0; j < g.cells; ++j) out[j] = (1.0 - a) * traj[i][j] + a * traj[i + 1][j];
        return out;
    }

    // s = t - tau^2 turns the (t-s)^{-1/2} endpoint singularity into a smooth integrand.
    std::vector<Field> apply(const std::vector<Field>& traj) const
    {
        std::vector<Field> out(times.size());
        out[0] = linear[0];
        for (std::size_t k = 1; k < times.size(); ++k) {
            Field acc = linear[k];
            const double root = std::sqrt(times[k]);
            for (std::size_t q = 0; q < rule.x.size(); ++q) {
                const double tau = 0.5 * root * (rule.x[q] + 1.0);
                const double weight = 0.5 * root * rule.w[q];
                const double lag = tau * tau;
                if (lag < kMinKernelTime) continue;
                const Field f = at(traj, times[k] - lag);
                Field src(g.cells);
                for (int j = 0; j < g.cells; ++j) src[j] = g.node[j] * f[j] * f[j];
                const Field grad = apply_kernel_gradient(lag, g, src);
                const double c = weight * 2.0 * tau * std::exp(-lag);
                for (int j = 0; j < g.cells; ++j) acc[j] -= c * grad[j];
            }
            out[k] = std::move(acc);
        }
        return out;
    }
};

double sup_l1(const Grid& g, const std::vector<Field>& a, const std::vector<Field>& b)
{
    double sup = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = 0.0;
        for (int j = 0; j < g.cells; ++j) d += g.qweight[j] * std::abs(a[k][j] - b[k][j]);
        sup = std::max(sup, d);
    }
    return sup;
}

Trajectory package(const State& f0, const std::vector<double>& times, const std::vector<Field>& fields)
{
    const EquilibriumReference ref = make_reference(integrate(f0), f0.grid);
    Trajectory tr;
    tr.times = times;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        State s = make_state_unchecked(f0.grid, fields[k]);
        Field clipped = fields[k];
        for (double& x : clipped) x = std::clamp(x, 0.0, 1.0);
        tr.diagnostics.push_back(diagnostics(make_state_unchecked(f0.grid, std::move(clipped)), times[k], ref));
        for (double x : s.values) {
            tr.monitor.min_value = std::min(tr.monitor.min_value, x);
            tr.monitor.max_value = std::max(tr.monitor.max_value, x);
        }
        tr.states.push_back(std::move(s));
    }
    tr.monitor.steps = static_cast<long>(fields.size()) - 1;
    return tr;
}

void check_support(const State& f0)
{
    if (f0.grid->geometry != Geometry::cartesian1d)
        throw std::invalid_argument("the Duhamel solver works on cartesian1d grids only");
}

}  // namespace

void validate(const DuhamelParams& p)
{
    if (!(p.t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (p.t_final > 1.0) throw std::invalid_argument("Duhamel t_final is capped at 1 (the construction is local in time)");
    if (p.time_nodes < 8) throw std::invalid_argument("time_nodes must be at least 8");
    if (!(p.picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be positive");
    if (p.picard_max_iter < 1) throw std::invalid_argument("picard_max_iter must be at least 1");
    if (p.singular_quad_nodes < 2) throw std::invalid_argument("singular_quad_nodes must be at least 2");
}

std::vector<double> duhamel_times(const DuhamelParams& p)
{
    std::vector<double> t(p.time_nodes + 1);
    for (int k = 0; k <= p.time_nodes; ++k) t[k] = p.t_final * k / p.time_nodes;
    return t;
}

Trajectory apply_T(const Trajectory& f, const State& f0, const DuhamelParams& p)
{
    validate(p);
    check_support(f0);
    const MildMap map(f0, p);
    if (f.states.size() != map.times.size()) throw std::invalid_argument("trajectory does not match the time grid");
    for (std::size_t k = 0; k < map.times.size(); ++k)
        if (std::abs(f.times[k] - map.times[k]) > 1e-12 * p.t_final)
            throw std::invalid_argument("trajectory does not match the time grid");
    std::vector<Field> in;
    for (const State& s : f.states) in.push_back(s.values);
    return package(f0, map.times, map.apply(in));
}

PicardResult picard_solve(const State& f0, const DuhamelParams& p)
{
    validate(p);
    check_support(f0);
    const MildMap map(f0, p);
    std::vector<Field> cur = map.linear;
    PicardResult res;
    int growth = 0;
    for (int it = 1; it <= p.picard_max_iter; ++it) {
        std::vector<Field> next = map.apply(cur);
        const double inc = sup_l1(map.g, next, cur);
        if (!std::isfinite(inc)) throw SolverError("Picard iteration produced non-finite values; shrink t_final");
        growth = (!res.increments.empty() && inc > res.increments.back()) ? growth + 1 : 0;
        res.increments.push_back(inc);
        cur = std::move(next);
        res.iterations = it;
        if (inc <= p.picard_tol) {
            res.trajectory = package(f0, map.times, cur);
            res.range_violation = std::max({0.0, -res.trajectory.monitor.min_value, res.trajectory.monitor.max_value - 1.0});
            return res;
        }
        if (growth >= 3) throw SolverError("Picard iteration is not contracting; shrink t_final");
    }
    throw SolverError("Picard iteration did not reach tolerance in " + std::to_string(p.picard_max_iter) +
                      " iterations; shrink t_final");
}

}  // namespace fdfp
