#include "fdfp/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdfp {

namespace {

const char* kMagic = "fdfp-snapshot v1";

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s, int row)
{
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || s.find_first_not_of(" \t\r", used) != std::string::npos)
        throw std::runtime_error("snapshot row " + std::to_string(row) + ": '" + s + "' is not a number");
    return x;
}

}  // namespace

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_snapshot(const State& s, double time)
{
    const Grid& g = *s.grid;
    std::string out = kMagic;
    out += '\n';
    out += to_string(g.geometry) + ',' + std::to_string(g.dim) + ',' + std::to_string(g.cells) + ',' +
           format_double(g.extent) + ',' + format_double(time) + '\n';
    for (int i = 0; i < g.cells; ++i) out += format_double(g.node[i]) + ',' + format_double(s.values[i]) + '\n';
    return out;
}

void write_snapshot(const State& s, double time, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write snapshot " + path);
    os << format_snapshot(s, time);
    if (!os) throw std::runtime_error("failed writing snapshot " + path);
}

SnapshotData parse_snapshot(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("snapshot is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMagic) throw std::runtime_error("unsupported snapshot version: '" + line + "'");
    if (!std::getline(is, line)) throw std::runtime_error("snapshot row 2: missing header");
    auto head = split(line, ',');
    if (head.size() != 5) throw std::runtime_error("snapshot row 2: expected geometry,dim,cells,extent,time");
    SnapshotData d;
    try {
        d.geometry = geometry_from_string(head[0]);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("snapshot row 2: ") + e.what());
    }
    const double dim = to_double(head[1], 2), cells = to_double(head[2], 2);
    if (dim != std::floor(dim) || dim < 1 || cells != std::floor(cells) || cells < 1)
        throw std::runtime_error("snapshot row 2: dim and cells must be positive integers");
    d.dim = static_cast<int>(dim);
    d.cells = static_cast<int>(cells);
    d.extent = to_double(head[3], 2);
    d.time = to_double(head[4], 2);
    int row = 2;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = split(line, ',');
        if (cols.size() != 2) throw std::runtime_error("snapshot row " + std::to_string(row) + ": expected node,value");
        const double node = to_double(cols[0], row);
        const double value = to_double(cols[1], row);
        if (!(value >= 0.0 && value <= 1.0))
            throw std::runtime_error("snapshot row " + std::to_string(row) + ": value " + cols[1] +
                                     " lies outside [0,1]");
        d.nodes.push_back(node);
        d.values.push_back(value);
    }
    if (d.values.size() != static_cast<std::size_t>(d.cells))
        throw std::runtime_error("snapshot declares " + std::to_string(d.cells) + " cells but holds " +
                                 std::to_string(d.values.size()) + " rows");
    return d;
}

SnapshotData read_snapshot(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open snapshot " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_snapshot(ss.str());
}

State snapshot_state(const SnapshotData& d)
{
    const Grid g = make_grid(d.geometry, d.dim, d.extent, d.cells);
    for (int i = 0; i < g.cells; ++i)
        if (std::abs(g.node[i] - d.nodes[i]) > 1e-9 * g.h)
            throw std::runtime_error("snapshot node " + std::to_string(i) + " does not match the grid");
    return make_state(g, d.values);
}

}  // namespace fdfp
