#include "fdfp/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdfp {

std::string to_string(Geometry g)
{
    return g == Geometry::radial ? "radial" : "cartesian1d";
}

Geometry geometry_from_string(const std::string& s)
{
    if (s == "cartesian1d") return Geometry::cartesian1d;
    if (s == "radial" || s == "radialNd") return Geometry::radial;
    throw std::invalid_argument("unknown geometry '" + s + "' (expected cartesian1d or radial)");
}

bool Grid::same_as(const Grid& o) const
{
    return geometry == o.geometry && dim == o.dim && extent == o.extent && cells == o.cells;
}

double sphere_area(int dim)
{
    const double half = 0.5 * dim;
    return dim * std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

Grid make_grid(Geometry geometry, int dim, double extent, int cells)
{
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw std::invalid_argument("grid extent must be positive");
    if (cells < 8)
        throw std::invalid_argument("grid needs at least 8 cells");
    if (dim < 1)
        throw std::invalid_argument("dimension must be at least 1");
    if (geometry == Geometry::cartesian1d && dim != 1)
        throw std::invalid_argument("cartesian1d grids are one-dimensional");

    Grid g;
    g.geometry = geometry;
    g.dim = dim;
    g.extent = extent;
    g.cells = cells;
    const double length = geometry == Geometry::radial ? extent : 2.0 * extent;
    g.h = length / cells;
    g.node.resize(cells);
    g.qweight.resize(cells);
    g.face_weight.resize(cells + 1);
    const double lo = g.lower();
    const double area = geometry == Geometry::radial ? sphere_area(dim) : 1.0;
    for (int i = 0; i < cells; ++i) {
        g.node[i] = lo + (i + 0.5) * g.h;
        g.qweight[i] = geometry == Geometry::radial ? area * std::pow(g.node[i], dim - 1) * g.h : g.h;
    }
    for (int i = 0; i <= cells; ++i) {
        if (geometry == Geometry::radial)
            g.face_weight[i] = area * std::pow(i * g.h, dim - 1);
        else
            g.face_weight[i] = 1.0;
    }
    if (geometry == Geometry::radial) g.face_weight[0] = 0.0;
    return g;
}

State make_state(std::shared_ptr<const Grid> grid, std::vector<double> values)
{
    if (!grid) throw std::invalid_argument("state needs a grid");
    if (values.size() != static_cast<std::size_t>(grid->cells))
        throw std::invalid_argument("state has " + std::to_string(values.size()) + " values, grid has " +
                                    std::to_string(grid->cells) + " cells");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = values[i];
        if (!std::isfinite(f) || f < 0.0 || f > 1.0)
            throw std::domain_error("value " + std::to_string(f) + " at cell " + std::to_string(i) +
                                    " lies outside [0,1]");
    }
    return State{std::move(grid), std::move(values)};
}

State make_state(const Grid& grid, std::vector<double> values)
{
    return make_state(std::make_shared<const Grid>(grid), std::move(values));
}

State make_state_unchecked(std::shared_ptr<const Grid> grid, std::vector<double> values)
{
    return State{std::move(grid), std::move(values)};
}

double integrate(const State& s)
{
    double m = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) m += s.grid->qweight[i] * s.values[i];
    return m;
}

double moment(const State& s, int order)
{
    if (order < 0 || order % 2 != 0)
        throw std::invalid_argument("moment order must be a non-negative even integer");
    double m = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = std::abs(s.grid->node[i]);
        m += s.grid->qweight[i] * std::pow(r, order) * s.values[i];
    }
    return m;
}

double l1_distance(const State& a, const State& b)
{
    if (!a.grid->same_as(*b.grid))
        throw std::invalid_argument("l1_distance: states live on different grids");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a.grid->qweight[i] * std::abs(a.values[i] - b.values[i]);
    return d;
}

double boundary_density(const State& s)
{
    const std::size_t n = s.size();
    double b = s.values[n - 1];
    if (s.grid->geometry == Geometry::cartesian1d) b = std::max(b, s.values[0]);
    return b;
}

}  // namespace fdfp
