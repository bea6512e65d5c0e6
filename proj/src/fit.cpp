#include "fdfp/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fdfp {

ExponentialFit fit_exponential(std::span<const double> times, std::span<const double> values)
{
    if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
    const std::size_t n = times.size();
    if (n < 4) throw std::invalid_argument("exponential fit needs at least 4 points");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(values[i] > 0.0)) throw std::invalid_argument("exponential fit needs positive values");
        y[i] = std::log(values[i]);
    }
    double tm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tm += times[i];
        ym += y[i];
    }
    tm /= n;
    ym /= n;
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = times[i] - tm, dy = y[i] - ym;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    if (!(stt > 0.0)) throw std::invalid_argument("exponential fit needs distinct times");
    ExponentialFit fit;
    fit.slope = sty / stt;
    fit.intercept = ym - fit.slope * tm;
    fit.r2 = syy > 0.0 ? sty * sty / (stt * syy) : 1.0;
    return fit;
}

}  // namespace fdfp
