#pragma once

#include "fdfp/grid.hpp"

#include <limits>
#include <span>
#include <vector>

namespace fdfp {

// a(t) = e^{-2t}, nu(t) = e^{2t} - 1.
struct MehlerFactors {
    double t = 0.0;
    double a = 0.0;
    double nu = 0.0;
};
MehlerFactors mehler_factors(double t);

// Below this time apply_kernel refuses to run; use the identity instead.
inline constexpr double kMinKernelTime = 1e-6;

// a^{-N/2} M_nu(a^{-1/2} v - w), with N = v.size() = w.size().
double kernel_eval(double t, std::span<const double> v, std::span<const double> w);
double kernel_eval(double t, double v, double w);

// F(t)[g] on a cartesian grid. The result is not confined to [0,1]
// (F(t)[1] = e^{t}), so plain arrays are returned.
std::vector<double> apply_kernel(double t, const Grid& grid, std::span<const double> g);
std::vector<double> apply_kernel(double t, const State& g);
// d/dv F(t)[g] in one dimension.
std::vector<double> apply_kernel_gradient(double t, const Grid& grid, std::span<const double> g);
std::vector<double> apply_kernel_gradient(double t, const State& g);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ||(1 + |v|^m) f||_p with the grid quadrature weights; p = kInf is the max.
double weighted_norm(const Grid& grid, std::span<const double> f, double p, double m);

struct AppendixBoundSpec {
    double p = 1.0;
    double q = 1.0;
    double m = 0.0;
    int alpha_order = 0;
    int dim = 1;
};
void validate(const AppendixBoundSpec& spec);

// ||d^alpha F(t)[g]||_{p,m} nu^{(N/2)(1/q-1/p)+|alpha|/2} e^{-(N/p'+|alpha|)t} / ||g||_{q,m}
double appendix_bound_ratio(const AppendixBoundSpec& spec, double t, const Grid& grid, std::span<const double> g);

}  // namespace fdfp
