#pragma once

#include "fdfp/grid.hpp"

#include <string>
#include <vector>

namespace fdfp {

// Text format:
//   fdfp-snapshot v1
//   <geometry>,<dim>,<cells>,<extent>,<time>
//   <node>,<value>        (cells rows, 17 significant digits)
struct SnapshotData {
    Geometry geometry = Geometry::cartesian1d;
    int dim = 1;
    int cells = 0;
    double extent = 0.0;
    double time = 0.0;
    std::vector<double> nodes;
    std::vector<double> values;
};

std::string format_snapshot(const State& s, double time);
void write_snapshot(const State& s, double time, const std::string& path);

SnapshotData parse_snapshot(const std::string& text);
SnapshotData read_snapshot(const std::string& path);
// Rebuilds the grid and checks that the stored nodes match it.
State snapshot_state(const SnapshotData& d);

// %.17g, the shortest fixed rule that round-trips doubles.
std::string format_double(double x);

}  // namespace fdfp
