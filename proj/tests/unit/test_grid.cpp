#include "doctest.h"
#include "oracle.hpp"

#include "fdfp/equilibrium.hpp"
#include "fdfp/fuzz.hpp"
#include "fdfp/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace fdfp;
using doctest::Approx;

namespace {

std::shared_ptr<const Grid> cart(double R, int n)
{
    return std::make_shared<const Grid>(make_grid(Geometry::cartesian1d, 1, R, n));
}

State constant(std::shared_ptr<const Grid> g, double c)
{
    return make_state(g, std::vector<double>(g->cells, c));
}

State reflected(const State& s)
{
    std::vector<double> v(s.values.rbegin(), s.values.rend());
    return make_state(s.grid, v);
}

}  // namespace

TEST_CASE("cartesian mesh nodes and spacing")
{
    const auto g = cart(8.0, 16);
    CHECK(g->h == 1.0);
    CHECK(g->node.front() == -7.5);
    CHECK(g->node.back() == 7.5);
    for (int i = 0; i < 16; ++i) CHECK(g->node[i] == Approx(-7.5 + i));
    for (double w : g->qweight) CHECK(w == 1.0);
}

TEST_CASE("16 cells on [-8, 8] have unit spacing")
{
    // The 16-cell mesh of [-8, 8]: centres -7.5 .. 7.5.  A 32-cell mesh has
    // centres -7.75, -7.25, ..., 7.75.
    const auto g = cart(8.0, 32);
    CHECK(g->h == 0.5);
    CHECK(g->node.front() == -7.75);
    CHECK(g->node[1] == -7.25);
    CHECK(g->node.back() == 7.75);
}

TEST_CASE("radial weights carry the shell measure")
{
    const Grid g = make_grid(Geometry::radial, 3, 8.0, 16);
    CHECK(g.h == 0.5);
    for (int i = 0; i < 16; ++i) {
        const double r = (i + 0.5) * 0.5;
        CHECK(g.node[i] == Approx(r));
        CHECK(g.qweight[i] == Approx(4.0 * std::numbers::pi * r * r * 0.5).epsilon(1e-14));
    }
    CHECK(g.face_weight[0] == 0.0);
}

TEST_CASE("disc area from radial midpoint weights")
{
    const Grid g = make_grid(Geometry::radial, 2, 1.0, 8);
    double area = 0.0;
    for (double w : g.qweight) area += w;
    CHECK(area == Approx(std::numbers::pi).epsilon(0.01));
}

TEST_CASE("sphere area constants")
{
    CHECK(sphere_area(1) == Approx(2.0));
    CHECK(sphere_area(2) == Approx(2.0 * std::numbers::pi));
    CHECK(sphere_area(3) == Approx(4.0 * std::numbers::pi));
}

TEST_CASE("grid construction rejects bad input")
{
    CHECK_THROWS_AS(make_grid(Geometry::cartesian1d, 1, 0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(Geometry::cartesian1d, 1, 8.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(Geometry::cartesian1d, 2, 8.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(Geometry::radial, 0, 8.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(geometry_from_string("spherical"), std::invalid_argument);
    CHECK(geometry_from_string("radialNd") == Geometry::radial);
    CHECK(geometry_from_string(to_string(Geometry::cartesian1d)) == Geometry::cartesian1d);
}

TEST_CASE("states are confined to [0,1]")
{
    const auto g = cart(8.0, 16);
    CHECK_THROWS_AS(make_state(g, std::vector<double>(16, 1.2)), std::domain_error);
    CHECK_THROWS_AS(make_state(g, std::vector<double>(16, -1e-3)), std::domain_error);
    CHECK_THROWS_AS(make_state(g, std::vector<double>(16, std::nan(""))), std::domain_error);
    CHECK_THROWS_AS(make_state(g, std::vector<double>(15, 0.5)), std::invalid_argument);
    CHECK_NOTHROW(make_state(g, std::vector<double>(16, 1.0)));
}

TEST_CASE("integrate: zero, one and the sampled Fermi-Dirac profile")
{
    const auto g = cart(8.0, 512);
    CHECK(integrate(constant(g, 0.0)) == 0.0);
    CHECK(integrate(constant(g, 1.0)) == Approx(16.0).epsilon(1e-15));
    const State f = fermi_dirac_state({1.0, 1}, g);
    CHECK(std::abs(integrate(f) - oracle::kMassBeta1N1) <= 1e-6);
}

TEST_CASE("moments")
{
    const auto g = cart(8.0, 512);
    const State f = fermi_dirac_state({1.0, 1}, g);
    CHECK(moment(f, 0) == integrate(f));
    CHECK(std::abs(moment(f, 2) - oracle::kM2Beta1N1) <= 1e-6);
    CHECK_THROWS_AS(moment(f, 3), std::invalid_argument);
    CHECK_THROWS_AS(moment(f, -2), std::invalid_argument);
}

TEST_CASE("l1 distance")
{
    const auto g = cart(8.0, 64);
    const State a = constant(g, 0.25);
    CHECK(l1_distance(a, a) == 0.0);
    CHECK(l1_distance(a, constant(g, 0.75)) == Approx(16.0 * 0.5).epsilon(1e-14));
    CHECK_THROWS_AS(l1_distance(a, constant(cart(8.0, 32), 0.25)), std::invalid_argument);

    StateFuzzer fz(7);
    for (int k = 0; k < 20; ++k) {
        const State x = fz.next(g), y = fz.next(g), z = fz.next(g);
        double direct = 0.0;
        for (int i = 0; i < g->cells; ++i) direct += g->h * std::abs(x.values[i] - z.values[i]);
        CHECK(l1_distance(x, z) == Approx(direct).epsilon(1e-13));
        CHECK(l1_distance(x, z) <= l1_distance(x, y) + l1_distance(y, z) + 1e-14);
    }
}

TEST_CASE("property: constants integrate exactly")
{
    StateFuzzer fz(11);
    for (int n : {8, 33, 256, 1000}) {
        const auto g = cart(fz.uniform(1.0, 12.0), n);
        const double c = fz.uniform();
        CHECK(integrate(constant(g, c)) == Approx(c * 2.0 * g->extent).epsilon(1e-13));
    }
    // N = 2: the midpoint rule integrates the linear weight r exactly.
    const auto disc = std::make_shared<const Grid>(make_grid(Geometry::radial, 2, 3.0, 40));
    CHECK(integrate(constant(disc, 1.0)) == Approx(std::numbers::pi * 9.0).epsilon(1e-13));
}

TEST_CASE("property: reflection leaves mass and even moments unchanged")
{
    StateFuzzer fz(12);
    const auto g = cart(8.0, 128);
    for (int k = 0; k < 40; ++k) {
        const State s = fz.next(g), r = reflected(s);
        CHECK(integrate(r) == Approx(integrate(s)).epsilon(1e-13));
        CHECK(moment(r, 2) == Approx(moment(s, 2)).epsilon(1e-13));
        CHECK(moment(r, 4) == Approx(moment(s, 4)).epsilon(1e-13));
    }
}

TEST_CASE("property: midpoint quadrature converges at second order")
{
    // Non-periodic profile, so the midpoint rule shows its h^2 rate.
    auto err = [](int n) {
        const auto g = cart(6.0, n);
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = 0.9 * std::exp((g->node[i] - 6.0) / 4.0);
        return std::abs(integrate(make_state(g, v)) - 0.9 * 4.0 * (1.0 - std::exp(-3.0)));
    };
    auto rerr = [](int n) {
        const auto g = std::make_shared<const Grid>(make_grid(Geometry::radial, 3, 2.0, n));
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = 1.0 - 0.2 * g->node[i];
        const double exact = 4.0 * std::numbers::pi * (8.0 / 3.0 - 0.2 * 4.0);
        return std::abs(integrate(make_state(g, v)) - exact);
    };
    for (int n : {16, 32, 64, 128}) {
        CHECK(err(n) / err(2 * n) >= 3.9);
        CHECK(rerr(n) / rerr(2 * n) >= 3.9);
    }
}

TEST_CASE("boundary density reports the outermost cells")
{
    const auto g = cart(8.0, 16);
    std::vector<double> v(16, 0.0);
    v.front() = 0.3;
    v.back() = 0.1;
    CHECK(boundary_density(make_state(g, v)) == 0.3);
}
