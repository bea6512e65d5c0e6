#pragma once

#include <span>

namespace fdfp {

struct ExponentialFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares of log(values) against times.
ExponentialFit fit_exponential(std::span<const double> times, std::span<const double> values);

}  // namespace fdfp
