#pragma once

#include <cmath>

namespace fdfp::detail {

// Face between cells holding fi and fj (j = i+1), dpot = |v_j|^2/2 - |v_i|^2/2,
// A = fi(1-fj), B = fj(1-fi):
//
//   h*J = (A e^{-dpot/2} - B e^{dpot/2}) / cosh(dpot/2)
//
// h*J has the sign of xi_i - xi_j, so every face dissipates H and equilibria
// carry no flux. It increases in fi and decreases in fj with slopes at most
// 1 + |dpot|/2, which makes forward Euler order preserving for
// dt <= h^2 / (2 + hR). The mobility is mu = h*J / (xi_i - xi_j).
struct FaceTerms {
    double mobility;
    double hflux;
};

inline FaceTerms face_terms(double fi, double fj, double dpot)
{
    const double A = fi * (1.0 - fj);
    const double B = fj * (1.0 - fi);
    const double half = 0.5 * dpot;
    const double ch = std::cosh(half);
    const double hflux = (A * std::exp(-half) - B * std::exp(half)) / ch;
    if (!(A > 0.0) || !(B > 0.0)) return {0.0, hflux};
    // h*J = 2 sqrt(AB) sinh(y/2) / cosh(dpot/2) with y = log(A/B) - dpot
    const double y = std::log(A / B) - dpot;
    const double shc = std::abs(y) < 1e-3 ? 1.0 + y * y / 24.0 : 2.0 * std::sinh(0.5 * y) / y;
    return {std::sqrt(A * B) * shc / ch, hflux};
}

}  // namespace fdfp::detail
