#pragma once

// Reference values and a plain quadrature rule that share no code with the
// library. The constants come from tests/oracles/frozen_values.py (mpmath,
// 30 digits) and are frozen here.

#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double kMassBeta1N1 = 1.5162560428865941371;
inline constexpr double kM2Beta1N1 = 1.9179391661758299716;
inline constexpr double kMassBeta1N3 = 12.050767188980242194;
inline constexpr double kBetaMassLimitN1 = 2.5066265021785967982;  // beta M(beta) at beta = 1e6
inline constexpr double kFreeEnergyBeta1N1 = -1.9179391661758299716;
inline constexpr double kFreeEnergyBeta1N3 = -13.658059996915673851;
inline constexpr double kGaussEnergy = 0.34390939927937328802;  // g = 0.8 exp(-v^2 / 0.98)
inline constexpr double kGaussL2m1 = 1.2711427378076235537;
inline constexpr double kCHalfN1 = 3.5449077018110320546;
inline constexpr double kCHalfN3 = 44.546623974653662762;

// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000)
{
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace oracle
