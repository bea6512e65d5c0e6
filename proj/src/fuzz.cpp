#include "fdfp/fuzz.hpp"

#include <algorithm>
#include <cmath>

namespace fdfp {

double StateFuzzer::uniform()
{
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

State StateFuzzer::smooth(std::shared_ptr<const Grid> grid, double support)
{
    const int n = grid->cells;
    std::vector<double> f(n, 0.0);
    const int bumps = 1 + static_cast<int>(uniform() * 4);
    const double lo = grid->geometry == Geometry::radial ? 0.0 : -support;
    for (int b = 0; b < bumps; ++b) {
        const double c = uniform(lo, support);
        const double w = uniform(0.2, 2.0);
        const double a = uniform(0.1, 1.0);
        for (int i = 0; i < n; ++i) {
            const double d = (grid->node[i] - c) / w;
            f[i] += a * std::exp(-0.5 * d * d);
        }
    }
    for (double& x : f) x = std::clamp(x, 0.0, 1.0);
    return make_state(std::move(grid), std::move(f));
}

State StateFuzzer::next(std::shared_ptr<const Grid> grid)
{
    return draw(static_cast<FuzzKind>(counter_++ % 4), std::move(grid));
}

State StateFuzzer::draw(FuzzKind kind, std::shared_ptr<const Grid> grid)
{
    const int n = grid->cells;
    const double support = 0.6 * grid->extent;
    std::vector<double> f(n, 0.0);
    switch (kind) {
    case FuzzKind::rough:
        for (int i = 0; i < n; ++i)
            if (std::abs(grid->node[i]) <= support) f[i] = uniform();
        break;
    case FuzzKind::smooth:
        return smooth(std::move(grid), support);
    case FuzzKind::blocky: {
        double level = uniform();
        for (int i = 0; i < n; ++i) {
            if (uniform() < 0.05) level = uniform();
            if (std::abs(grid->node[i]) <= support) f[i] = level;
        }
        break;
    }
    case FuzzKind::saturated:
        for (int i = 0; i < n; ++i) {
            if (std::abs(grid->node[i]) > support) continue;
            const double u = uniform();
            f[i] = u < 0.3 ? 0.0 : (u < 0.6 ? 1.0 : uniform());
        }
        break;
    }
    return make_state(std::move(grid), std::move(f));
}

State StateFuzzer::above(const State& f, bool rough)
{
    std::vector<double> g = f.values;
    if (rough) {
        for (double& x : g) x += (1.0 - x) * uniform();
    } else {
        const State bump = smooth(f.grid, 0.6 * f.grid->extent);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += (1.0 - g[i]) * bump.values[i];
    }
    for (double& x : g) x = std::min(x, 1.0);
    return make_state(f.grid, std::move(g));
}

}  // namespace fdfp
