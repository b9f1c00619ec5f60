#pragma once

#include <cstddef>

namespace tricam {

// Uniform grid on [x_min, x_max). Periodic grids exclude the right endpoint,
// so x_i = x_min + i*dx for i in [0, n) and dx = (x_max - x_min)/n.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n = 16;
    double dx = 1.0 / 16.0;
    bool periodic = true;

    double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * dx; }
    double length() const noexcept { return x_max - x_min; }

    // Signed distance x - y reduced to the nearest periodic image, in [-length/2, length/2).
    double wrap(double d) const noexcept;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

inline constexpr std::size_t kMinGridPoints = 16;

// Throws InvalidExtentError when x_max <= x_min or n < 16.
Grid1D make_grid(double x_min, double x_max, std::size_t n, bool periodic = true);

// The default truncation of the real line: [-L, L) with periodic wrap.
Grid1D make_symmetric_grid(double half_length, std::size_t n);

}  // namespace tricam
