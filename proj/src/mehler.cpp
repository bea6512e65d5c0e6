#include "fdfp/mehler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fdfp {

namespace {

constexpr double kBand = 12.0;  // kernel is < 1e-31 beyond this many widths
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

void check_time(double t)
{
    if (!(t > 0.0)) throw std::invalid_argument("kernel time must be positive");
    if (t < kMinKernelTime)
        throw std::invalid_argument("kernel time " + std::to_string(t) + " is below the resolvable limit 1e-6");
}

void check_grid(const Grid& grid, std::size_t n)
{
    if (grid.geometry != Geometry::cartesian1d) throw std::invalid_argument("kernel operators need a cartesian1d grid");
    if (n != static_cast<std::size_t>(grid.cells)) throw std::invalid_argument("array length does not match grid");
}

double phi(double x)
{
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// Phi(hi) - Phi(lo) for lo <= hi, taken from the tail that keeps precision.
double cdf_diff(double lo, double hi)
{
    constexpr double r = std::numbers::sqrt2 / 2.0;
    if (lo >= 0.0) return 0.5 * (std::erfc(lo * r) - std::erfc(hi * r));
    if (hi <= 0.0) return 0.5 * (std::erfc(-hi * r) - std::erfc(-lo * r));
    return 1.0 - 0.5 * (std::erfc(-lo * r) + std::erfc(hi * r));
}

// In v-scale the kernel is a Gaussian of variance s2 = 1 - e^{-2t} centred
// at e^{-t} w. Wide kernels are applied by midpoint quadrature over w. Narrow
// ones (s < 2h) send each source node to cell averages of the target grid,
// with the kernel variance reduced by h^2/12 to offset the averaging; the
// columns then sum to one, so mass is exact at every t.
std::vector<double> apply(double t, const Grid& grid, std::span<const double> g, bool gradient)
{
    check_time(t);
    check_grid(grid, g.size());
    const int n = grid.cells;
    const double h = grid.h;
    const double c = std::exp(-t);
    const double s2 = -std::expm1(-2.0 * t);
    const double s = std::sqrt(s2);
    const double lo = grid.lower();
    const bool midpoint = s >= 2.0 * h;
    const double se = midpoint ? s : std::sqrt(std::max(s2 - h * h / 12.0, 1e-6 * h * h));
    const double reach = kBand * se + h;

    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double v = grid.node[i];
        // cells whose centre maps within reach of v
        const int j0 = std::max(0, static_cast<int>(std::floor(((v - reach) / c - lo) / h - 0.5)));
        const int j1 = std::min(n - 1, static_cast<int>(std::ceil(((v + reach) / c - lo) / h - 0.5)));
        double acc = 0.0;
        for (int j = j0; j <= j1; ++j) {
            if (g[j] == 0.0) continue;
            const double w = grid.node[j];
            double k;
            if (midpoint) {
                const double d = (v - c * w) / s;
                k = h * phi(d) / s;
                if (gradient) k *= -d / s;
            } else {
                k = cdf_diff((v - 0.5 * h - c * w) / se, (v + 0.5 * h - c * w) / se);
            }
            acc += k * g[j];
        }
        out[i] = acc;
    }
    if (!gradient || midpoint) return out;

    // Narrow kernels: central differences of the cell-averaged values.
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        const double left = i > 0 ? out[i - 1] : 0.0;
        const double right = i + 1 < n ? out[i + 1] : 0.0;
        d[i] = (right - left) / (2.0 * h);
    }
    return d;
}

}  // namespace

MehlerFactors mehler_factors(double t)
{
    if (!(t > 0.0)) throw std::invalid_argument("kernel time must be positive");
    return {t, std::exp(-2.0 * t), std::expm1(2.0 * t)};
}

double kernel_eval(double t, std::span<const double> v, std::span<const double> w)
{
    if (v.size() != w.size() || v.empty()) throw std::invalid_argument("kernel points must share a dimension");
    const MehlerFactors f = mehler_factors(t);
    const double N = static_cast<double>(v.size());
    const double scale = std::exp(t);  // a^{-1/2}
    double r2 = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double d = scale * v[k] - w[k];
        r2 += d * d;
    }
    return std::pow(f.a, -0.5 * N) * std::pow(2.0 * std::numbers::pi * f.nu, -0.5 * N) * std::exp(-0.5 * r2 / f.nu);
}

double kernel_eval(double t, double v, double w)
{
    return kernel_eval(t, std::span<const double>(&v, 1), std::span<const double>(&w, 1));
}

std::vector<double> apply_kernel(double t, const Grid& grid, std::span<const double> g)
{
    return apply(t, grid, g, false);
}

std::vector<double> apply_kernel(double t, const State& g)
{
    return apply(t, *g.grid, g.values, false);
}

std::vector<double> apply_kernel_gradient(double t, const Grid& grid, std::span<const double> g)
{
    return apply(t, grid, g, true);
}

std::vector<double> apply_kernel_gradient(double t, const State& g)
{
    return apply(t, *g.grid, g.values, true);
}

double weighted_norm(const Grid& grid, std::span<const double> f, double p, double m)
{
    if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must be at least 1");
    if (!(m >= 0.0)) throw std::invalid_argument("weight exponent must be non-negative");
    if (f.size() != static_cast<std::size_t>(grid.cells)) throw std::invalid_argument("array length does not match grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = (1.0 + std::pow(std::abs(grid.node[i]), m)) * std::abs(f[i]);
        if (std::isinf(p))
            acc = std::max(acc, x);
        else
            acc += grid.qweight[i] * std::pow(x, p);
    }
    return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

void validate(const AppendixBoundSpec& spec)
{
    if (!(spec.q >= 1.0) || !(spec.p >= spec.q)) throw std::invalid_argument("need 1 <= q <= p");
    if (!(spec.m >= 0.0)) throw std::invalid_argument("need m >= 0");
    if (spec.alpha_order != 0 && spec.alpha_order != 1) throw std::invalid_argument("derivative order must be 0 or 1");
    if (spec.dim != 1) throw std::invalid_argument("kernel bounds are evaluated in one dimension");
}

double appendix_bound_ratio(const AppendixBoundSpec& spec, double t, const Grid& grid, std::span<const double> g)
{
    validate(spec);
    const double denom = weighted_norm(grid, g, spec.q, spec.m);
    if (!(denom > 0.0)) throw std::invalid_argument("test function must be nonzero");
    const auto out = spec.alpha_order == 1 ? apply_kernel_gradient(t, grid, g) : apply_kernel(t, grid, g);
    const double num = weighted_norm(grid, out, spec.p, spec.m);
    const double inv_p = std::isinf(spec.p) ? 0.0 : 1.0 / spec.p;
    const double inv_q = std::isinf(spec.q) ? 0.0 : 1.0 / spec.q;
    const double inv_pdual = 1.0 - inv_p;
    const double N = spec.dim;
    const double nu = std::expm1(2.0 * t);
    const double expo = 0.5 * N * (inv_q - inv_p) + 0.5 * spec.alpha_order;
    return num * std::pow(nu, expo) * std::exp(-(N * inv_pdual + spec.alpha_order) * t) / denom;
}

}  // namespace fdfp
