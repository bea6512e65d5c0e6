#include "fdfp/solver_fv.hpp"

#include "flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fdfp {

namespace {

// Reusable buffers for in-place stepping.
struct Stepper {
    const Grid& g;
    std::vector<double> dpot;  // per interior face
    std::vector<double> flux;  // W * J at faces 0..n

    explicit Stepper(const Grid& grid) : g(grid), dpot(grid.cells + 1, 0.0), flux(grid.cells + 1, 0.0)
    {
        for (int i = 0; i + 1 < g.cells; ++i) {
            const double a = g.node[i], b = g.node[i + 1];
            dpot[i + 1] = 0.5 * (b * b - a * a);
        }
    }

    void fluxes(const std::vector<double>& f)
    {
        const int n = g.cells;
        flux[0] = flux[n] = 0.0;
        for (int i = 0; i + 1 < n; ++i)
            flux[i + 1] = g.face_weight[i + 1] * detail::face_terms(f[i], f[i + 1], dpot[i + 1]).hflux / g.h;
    }

    void advance(std::vector<double>& f, double dt)
    {
        fluxes(f);
        for (int i = 0; i < g.cells; ++i) f[i] -= dt / g.qweight[i] * (flux[i + 1] - flux[i]);
    }
};

double entropy_of(const Grid& g, const std::vector<double>& f)
{
    double H = 0.0;
    for (int i = 0; i < g.cells; ++i) {
        const double r = std::clamp(f[i], 0.0, 1.0);
        H += g.qweight[i] * (entropy_density(r) + 0.5 * g.node[i] * g.node[i] * f[i]);
    }
    return H;
}

double mass_of(const Grid& g, const std::vector<double>& f)
{
    double m = 0.0;
    for (int i = 0; i < g.cells; ++i) m += g.qweight[i] * f[i];
    return m;
}

double resolve_dt(const State& f0, const FvParams& p)
{
    const double limit = max_stable_dt(*f0.grid, 1.0);
    if (p.dt_override) {
        if (!(*p.dt_override > 0.0)) throw std::invalid_argument("dt must be positive");
        if (*p.dt_override > limit * (1.0 + 1e-12))
            throw SolverError("dt " + std::to_string(*p.dt_override) + " exceeds the stability limit " +
                              std::to_string(limit));
        return *p.dt_override;
    }
    return max_stable_dt(f0, p);
}

}  // namespace

void validate(const FvParams& p)
{
    if (!(p.t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (!(p.cfl_safety > 0.0 && p.cfl_safety <= 1.0)) throw std::invalid_argument("cfl_safety must lie in (0,1]");
    if (p.output_stride < 1) throw std::invalid_argument("output_stride must be at least 1");
    if (!(p.clamp_delta > 0.0 && p.clamp_delta < 0.5)) throw std::invalid_argument("clamp_delta must lie in (0,0.5)");
    for (double t : p.output_times)
        if (!(t >= 0.0 && t <= p.t_final)) throw std::invalid_argument("output times must lie in [0, t_final]");
}

std::vector<double> interface_flux(const State& s)
{
    Stepper st(*s.grid);
    std::vector<double> J(s.grid->cells + 1, 0.0);
    for (int i = 0; i + 1 < s.grid->cells; ++i)
        J[i + 1] = detail::face_terms(s.values[i], s.values[i + 1], st.dpot[i + 1]).hflux / s.grid->h;
    return J;
}

double max_stable_dt(const Grid& g, double cfl_safety)
{
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw std::invalid_argument("cfl_safety must lie in (0,1]");
    const double hR = g.h * g.extent;
    double best = 1e300;
    for (int i = 0; i < g.cells; ++i) {
        const double wl = g.face_weight[i], wr = g.face_weight[i + 1];
        const double denom = wl + wr + hR * std::max(wl, wr);
        best = std::min(best, g.h * g.qweight[i] / denom);
    }
    return cfl_safety * best;
}

double max_stable_dt(const State& s, const FvParams& p)
{
    return max_stable_dt(*s.grid, p.cfl_safety);
}

State step(const State& s, double dt)
{
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const double limit = max_stable_dt(*s.grid, 1.0);
    if (dt > limit * (1.0 + 1e-12))
        throw SolverError("dt " + std::to_string(dt) + " exceeds the stability limit " + std::to_string(limit));
    Stepper st(*s.grid);
    std::vector<double> f = s.values;
    st.advance(f, dt);
    return make_state_unchecked(s.grid, std::move(f));
}

Trajectory solve(const State& f0, const FvParams& p, std::optional<double> equilibrium_mass)
{
    validate(p);
    const Grid& g = *f0.grid;
    const double dt = resolve_dt(f0, p);
    const double mass0 = integrate(f0);
    const EquilibriumReference ref = make_reference(equilibrium_mass.value_or(mass0), f0.grid);

    std::vector<double> stops = p.output_times;
    std::sort(stops.begin(), stops.end());
    stops.erase(std::remove_if(stops.begin(), stops.end(), [](double t) { return t <= 0.0; }), stops.end());
    if (stops.empty() || stops.back() < p.t_final) stops.push_back(p.t_final);

    Trajectory traj;
    auto record = [&](const std::vector<double>& f, double t) {
        State s = make_state_unchecked(f0.grid, f);
        traj.diagnostics.push_back(diagnostics(s, t, ref));
        traj.times.push_back(t);
        traj.states.push_back(std::move(s));
    };

    std::vector<double> f = f0.values;
    Stepper st(g);
    StepMonitor& mon = traj.monitor;
    double H = p.monitor ? entropy_of(g, f) : 0.0;
    mon.min_value = *std::min_element(f.begin(), f.end());
    mon.max_value = *std::max_element(f.begin(), f.end());
    record(f, 0.0);

    double t = 0.0;
    long k = 0;
    for (double stop : stops) {
        while (t < stop) {
            const double d = std::min(dt, stop - t);
            st.advance(f, d);
            ++k;
            t = (stop - t <= dt) ? stop : t + d;
            if (p.monitor) {
                for (double x : f) {
                    mon.min_value = std::min(mon.min_value, x);
                    mon.max_value = std::max(mon.max_value, x);
                }
                const double Hn = entropy_of(g, f);
                mon.max_entropy_increase = std::max(mon.max_entropy_increase, Hn - H);
                H = Hn;
                if (mass0 > 0.0)
                    mon.max_mass_drift = std::max(mon.max_mass_drift, std::abs(mass_of(g, f) - mass0) / mass0);
            }
            if (!std::all_of(f.begin(), f.end(), [](double x) { return std::isfinite(x); }))
                throw SolverError("non-finite value at t = " + std::to_string(t));
            if (t == stop || k % p.output_stride == 0) record(f, t);
        }
    }
    mon.steps = k;
    return traj;
}

ComparisonReport comparison_experiment(const State& f0, const State& g0, const FvParams& p)
{
    validate(p);
    if (!f0.grid->same_as(*g0.grid)) throw std::invalid_argument("comparison needs states on the same grid");
    for (std::size_t i = 0; i < f0.size(); ++i)
        if (f0.values[i] > g0.values[i])
            throw std::invalid_argument("comparison needs f0 <= g0 (violated at cell " + std::to_string(i) + ")");
    const Grid& g = *f0.grid;
    const double dt = resolve_dt(f0, p);
    const double d0 = l1_distance(f0, g0);
    std::vector<double> f = f0.values, u = g0.values;
    Stepper sf(g), su(g);
    ComparisonReport rep;
    double t = 0.0;
    while (t < p.t_final) {
        const double d = std::min(dt, p.t_final - t);
        sf.advance(f, d);
        su.advance(u, d);
        t = (p.t_final - t <= dt) ? p.t_final : t + d;
        ++rep.steps;
        double l1 = 0.0;
        for (int i = 0; i < g.cells; ++i) {
            rep.max_positive_part = std::max(rep.max_positive_part, f[i] - u[i]);
            l1 += g.qweight[i] * std::abs(f[i] - u[i]);
        }
        rep.max_l1_slack = std::max(rep.max_l1_slack, l1 - d0);
    }
    return rep;
}

DecayBound make_decay_bound(double mass, double m_star_mass, int dim)
{
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (m_star_mass < mass) throw std::invalid_argument("M* must be at least the mass");
    DecayBound b;
    b.mass = mass;
    b.m_star_mass = m_star_mass;
    b.beta_star = beta_of_mass(m_star_mass, dim).beta;
    b.rate_constant = 1.0 - 1.0 / (b.beta_star + 1.0);
    return b;
}

DecayFitReport decay_rate_fit(const Trajectory& traj, const DecayBound& bound, double t_lo, double t_hi)
{
    if (traj.times.empty()) throw std::invalid_argument("empty trajectory");
    if (!(t_lo < t_hi) || t_lo < traj.times.front() || t_hi > traj.times.back() + 1e-12)
        throw std::invalid_argument("fit window lies outside the trajectory");
    DecayFitReport rep;
    rep.minus_two_c = -2.0 * bound.rate_constant;
    const double rel0 = traj.diagnostics.front().rel_entropy;
    if (rel0 <= kEntropyFloor) {
        rep.at_equilibrium = true;
        rep.bound_satisfied = true;
        return rep;
    }
    std::vector<double> ts, vs;
    rep.bound_satisfied = true;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
        const double rel = traj.diagnostics[k].rel_entropy;
        const double envelope = rel0 * std::exp(rep.minus_two_c * t);
        if (rel > std::max(1.05 * envelope, kEntropyFloor)) rep.bound_satisfied = false;
        if (envelope > kEntropyFloor) rep.worst_bound_ratio = std::max(rep.worst_bound_ratio, rel / envelope);
        if (rel > kEntropyFloor) {
            ts.push_back(t);
            vs.push_back(rel);
        }
    }
    rep.points = static_cast<int>(ts.size());
    if (ts.size() < 4) throw std::invalid_argument("decay fit window holds fewer than 4 usable points");
    rep.fit = fit_exponential(ts, vs);
    return rep;
}

bool is_non_increasing(const State& s, double tol)
{
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s.values[i + 1] > s.values[i] + tol) return false;
    return true;
}

MomentPropagationReport radial_moment_propagation(const State& f0, const FvParams& p, int order,
                                                  const std::vector<double>& t_finals)
{
    if (f0.grid->geometry != Geometry::radial) throw std::invalid_argument("moment propagation needs a radial grid");
    if (!is_non_increasing(f0, 0.0)) throw std::invalid_argument("initial profile is not non-increasing");
    if (t_finals.empty()) throw std::invalid_argument("need at least one t_final");
    const Grid& g = *f0.grid;
    MomentPropagationReport rep;
    rep.t_finals = t_finals;
    for (double tf : t_finals) {
        FvParams q = p;
        q.t_final = tf;
        q.output_times.clear();
        const Trajectory tr = solve(f0, q);
        double sup_m = 0.0, sup_tail = 0.0;
        for (const State& s : tr.states) {
            sup_m = std::max(sup_m, moment(s, order));
            double tail = 0.0;
            for (int i = 0; i < g.cells; ++i)
                if (g.node[i] >= 0.5 * g.extent) tail += g.qweight[i] * std::pow(g.node[i], order) * s.values[i];
            sup_tail = std::max(sup_tail, tail);
            if (!is_non_increasing(s)) rep.monotone_preserved = false;
        }
        rep.sup_moment.push_back(sup_m);
        rep.sup_tail.push_back(sup_tail);
    }
    const auto [lo, hi] = std::minmax_element(rep.sup_moment.begin(), rep.sup_moment.end());
    rep.spread = *hi / *lo - 1.0;
    rep.uniform = rep.spread <= 0.02;
    return rep;
}

}  // namespace fdfp
