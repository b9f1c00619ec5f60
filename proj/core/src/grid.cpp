#include "tricam/grid.hpp"

#include <cmath>
#include <string>

#include "tricam/errors.hpp"

namespace tricam {

double Grid1D::wrap(double d) const noexcept {
    const double len = length();
    d = std::fmod(d + 0.5 * len, len);
    if (d < 0.0) d += len;
    return d - 0.5 * len;
}

Grid1D make_grid(double x_min, double x_max, std::size_t n, bool periodic) {
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw InvalidExtentError("invalid extent: need x_max > x_min, got [" + std::to_string(x_min) +
                                 ", " + std::to_string(x_max) + "]");
    }
    if (n < kMinGridPoints) {
        throw InvalidExtentError("invalid extent: need n >= 16, got " + std::to_string(n));
    }
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n = n;
    g.dx = (x_max - x_min) / static_cast<double>(n);
    g.periodic = periodic;
    return g;
}

Grid1D make_symmetric_grid(double half_length, std::size_t n) {
    return make_grid(-half_length, half_length, n, true);
}

}  // namespace tricam
