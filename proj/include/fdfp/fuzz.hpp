#pragma once

#include "fdfp/grid.hpp"

#include <cstdint>
#include <random>

namespace fdfp {

enum class FuzzKind { rough, smooth, blocky, saturated };

// Deterministic random states for property suites. Draws only raw 64-bit
// words from the engine so results do not depend on the standard library's
// distribution implementations.
class StateFuzzer {
public:
    explicit StateFuzzer(std::uint64_t seed) : rng_(seed) {}

    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // next() cycles through the kinds: rough (cell-wise random), smooth
    // (sums of bumps), blocky, and saturated (cells at exactly 0 or 1 mixed
    // with random values).
    State next(std::shared_ptr<const Grid> grid);
    State draw(FuzzKind kind, std::shared_ptr<const Grid> grid);
    // Smooth profile supported within |v| <= support.
    State smooth(std::shared_ptr<const Grid> grid, double support);
    // A state g >= f obtained by raising f towards 1.
    State above(const State& f, bool rough);

private:
    std::mt19937_64 rng_;
    unsigned counter_ = 0;
};

}  // namespace fdfp
