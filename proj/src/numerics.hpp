#pragma once

// Thin wrappers over GSL; errors surface as exceptions instead of abort().

#include <functional>
#include <vector>

namespace fdfp::detail {

double integrate_semi_infinite(const std::function<double(double)>& f, double lower, double epsrel);
double integrate_interval(const std::function<double(double)>& f, double a, double b, double epsrel);
// Root of a monotone function bracketed in [lo, hi], by Brent's method.
double brent_root(const std::function<double(double)>& f, double lo, double hi, double xtol);

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};
GaussRule gauss_legendre(int points);

}  // namespace fdfp::detail
