#include "doctest.h"

#include "fdfp/mehler.hpp"
#include "fdfp/solver_duhamel.hpp"
#include "fdfp/solver_fv.hpp"

#include <cmath>

using namespace fdfp;
using doctest::Approx;

namespace {

std::shared_ptr<const Grid> cart(double R, int n)
{
    return std::make_shared<const Grid>(make_grid(Geometry::cartesian1d, 1, R, n));
}

State half_indicator(std::shared_ptr<const Grid> g)
{
    std::vector<double> v(g->cells, 0.0);
    for (int i = 0; i < g->cells; ++i)
        if (std::abs(g->node[i]) <= 1.0) v[i] = 0.5;
    return make_state(g, v);
}

Trajectory constant_in_time(const State& s, const DuhamelParams& p)
{
    Trajectory tr;
    tr.times = duhamel_times(p);
    tr.states.assign(tr.times.size(), s);
    return tr;
}

double l1(const Grid& g, const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0.0;
    for (int i = 0; i < g.cells; ++i) d += g.qweight[i] * std::abs(a[i] - b[i]);
    return d;
}

}  // namespace

TEST_CASE("time grid and parameter checks")
{
    DuhamelParams p;
    p.t_final = 0.4;
    p.time_nodes = 8;
    const auto t = duhamel_times(p);
    REQUIRE(t.size() == 9);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 0.4);
    CHECK(t[4] == Approx(0.2));

    const State f0 = half_indicator(cart(8.0, 64));
    DuhamelParams bad;
    bad.t_final = 1.5;
    CHECK_THROWS_AS(picard_solve(f0, bad), std::invalid_argument);
    bad = {};
    bad.time_nodes = 4;
    CHECK_THROWS_AS(picard_solve(f0, bad), std::invalid_argument);
    bad = {};
    bad.picard_tol = 0.0;
    CHECK_THROWS_AS(picard_solve(f0, bad), std::invalid_argument);
    const auto rg = std::make_shared<const Grid>(make_grid(Geometry::radial, 3, 8.0, 64));
    CHECK_THROWS_AS(picard_solve(make_state(rg, std::vector<double>(64, 0.1)), DuhamelParams{}), std::invalid_argument);
}

TEST_CASE("the mild map on trivial inputs")
{
    const auto g = cart(8.0, 128);
    const State f0 = half_indicator(g);
    DuhamelParams p;
    p.t_final = 0.2;
    p.time_nodes = 8;

    // Zero trajectory: only the linear flow remains.
    const State zero = make_state(g, std::vector<double>(128, 0.0));
    const Trajectory lin = apply_T(constant_in_time(zero, p), f0, p);
    CHECK(lin.states[0].values == f0.values);
    for (std::size_t k = 1; k < lin.times.size(); ++k)
        CHECK(l1(*g, lin.states[k].values, apply_kernel(lin.times[k], f0)) == 0.0);

    // Zero data stay zero.
    const PicardResult z = picard_solve(zero, p);
    for (const auto& s : z.trajectory.states)
        for (double x : s.values) CHECK(x == 0.0);

    Trajectory wrong = constant_in_time(f0, p);
    wrong.states.pop_back();
    wrong.times.pop_back();
    CHECK_THROWS_AS(apply_T(wrong, f0, p), std::invalid_argument);
}

TEST_CASE("one application reproduces the PDE right-hand side at short times")
{
    // (T[f0](t) - f0)/t -> f0'' + (v f0 (1 - f0))' as t -> 0, compared
    // against a centred-difference stencil.
    const auto g = cart(6.0, 512);
    std::vector<double> v(g->cells);
    for (int i = 0; i < g->cells; ++i) v[i] = 0.6 * std::exp(-g->node[i] * g->node[i]);
    const State f0 = make_state(g, v);
    const double h = g->h;
    std::vector<double> rhs(g->cells, 0.0);
    auto flux = [&](int i) { return g->node[i] * v[i] * (1.0 - v[i]); };
    double scale = 0.0;
    for (int i = 1; i + 1 < g->cells; ++i) {
        rhs[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h) + (flux(i + 1) - flux(i - 1)) / (2.0 * h);
        scale = std::max(scale, std::abs(rhs[i]));
    }
    std::vector<double> err;
    for (double t1 : {0.04, 0.02, 0.01}) {
        DuhamelParams p;
        p.time_nodes = 8;
        p.t_final = 8.0 * t1;
        const Trajectory out = apply_T(constant_in_time(f0, p), f0, p);
        double worst = 0.0;
        for (int i = 1; i + 1 < g->cells; ++i)
            worst = std::max(worst, std::abs((out.states[1].values[i] - v[i]) / t1 - rhs[i]));
        err.push_back(worst / scale);
    }
    MESSAGE("relative defects: " << err[0] << " " << err[1] << " " << err[2]);
    CHECK(err[2] < err[1]);
    CHECK(err[1] < err[0]);
    CHECK(err[2] <= 0.05);
}

TEST_CASE("the equilibrium is a fixed point up to discretisation")
{
    const auto g = cart(8.0, 256);
    const State fm = equilibrium_state(1.5, g);
    DuhamelParams p;
    const PicardResult r = picard_solve(fm, p);
    double worst = 0.0;
    for (const auto& s : r.trajectory.states) worst = std::max(worst, l1(*g, s.values, fm.values));
    CHECK(worst <= 5e-3);
}

TEST_CASE("Picard iteration on indicator data")
{
    const auto g = cart(8.0, 256);
    const State f0 = half_indicator(g);
    DuhamelParams p;
    const PicardResult r = picard_solve(f0, p);
    CHECK(r.iterations <= 15);
    CHECK(r.increments.back() <= p.picard_tol);
    CHECK(r.trajectory.times.size() == static_cast<std::size_t>(p.time_nodes + 1));
    // Increments shrink geometrically after the first one.
    for (std::size_t k = 2; k < r.increments.size(); ++k) CHECK(r.increments[k] < 0.9 * r.increments[k - 1]);
    const double M = integrate(f0);
    for (const auto& d : r.trajectory.diagnostics) CHECK(std::abs(d.mass - M) <= 1e-6);
    CHECK(r.trajectory.monitor.min_value >= -1e-6);
    CHECK(r.trajectory.monitor.max_value <= 1.0 + 1e-6);
    CHECK(r.range_violation <= 1e-6);

    // Against the finite-volume solution at t = 0.25.
    FvParams fp;
    fp.t_final = p.t_final;
    const Trajectory fv = solve(f0, fp);
    CHECK(l1(*g, fv.states.back().values, r.trajectory.states.back().values) <= 1e-2);
}

TEST_CASE("a starved iteration reports a solver error")
{
    const State f0 = half_indicator(cart(8.0, 128));
    DuhamelParams p;
    p.picard_max_iter = 2;
    p.picard_tol = 1e-14;
    CHECK_THROWS_AS(picard_solve(f0, p), SolverError);
}
