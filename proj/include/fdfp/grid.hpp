#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fdfp {

enum class Geometry { cartesian1d, radial };

std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& s);

// Uniform cell-centred mesh. Cartesian grids cover [-R, R] (dim must be 1);
// radial grids cover [0, R] and carry the N-dimensional shell measure.
struct Grid {
    Geometry geometry = Geometry::cartesian1d;
    int dim = 1;
    double extent = 0.0;
    int cells = 0;
    double h = 0.0;
    std::vector<double> node;
    std::vector<double> qweight;
    // n+1 face weights used to scale interface fluxes; zero at r = 0.
    std::vector<double> face_weight;

    double lower() const { return geometry == Geometry::radial ? 0.0 : -extent; }
    bool same_as(const Grid& o) const;
};

// Surface constant N * omega_N, the measure of the unit sphere in R^N.
double sphere_area(int dim);

Grid make_grid(Geometry geometry, int dim, double extent, int cells);

// Cell averages of f on a shared grid. Constructed only through make_state,
// which checks 0 <= f <= 1.
struct State {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

State make_state(std::shared_ptr<const Grid> grid, std::vector<double> values);
State make_state(const Grid& grid, std::vector<double> values);
// Skips the range check; the caller guarantees finiteness.
State make_state_unchecked(std::shared_ptr<const Grid> grid, std::vector<double> values);

double integrate(const State& s);
double moment(const State& s, int order);
double l1_distance(const State& a, const State& b);
// Largest value in the outermost cells; flags under-resolved tails.
double boundary_density(const State& s);

}  // namespace fdfp
