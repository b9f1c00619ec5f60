#pragma once

#include <span>
#include <vector>

#include "tricam/dynamics.hpp"

namespace tricam {

// phi(t, x) = rho((t - t_center)/t_half_width) * rho((x - x_center)/x_half_width)
// with rho the unnormalized bump.
struct BumpTestFunction {
    double t_center = 0.0;
    double t_half_width = 1.0;
    double x_center = 0.0;
    double x_half_width = 1.0;

    double value(double t, double x) const noexcept;
    double d_t(double t, double x) const noexcept;
    double d_x(double t, double x) const noexcept;
};

struct WeakResidual {
    double r_a = 0.0;
    double r_c = 0.0;
};

// Space-time residuals of the weak formulation
//   R_a = int int (a phi_t + a_x b phi - 1/2 G1*f1 phi_x + 1/2 G1*g1 phi) + int a(t0) phi(t0)
// and the c analogue with (f2, g2). Trapezoid in time over every `stride`-th
// slice (the last slice must be hit), periodic Riemann sum in x.
// The support may begin before the first slice, which activates the t0 term,
// but must end by the last slice and stay inside [x_min, x_max].
// Throws OutOfDomainError otherwise, InvalidArgumentError on fewer than 2 used
// slices, non-increasing times or mismatched grids.
WeakResidual weak_residual(std::span<const State> slices, const BumpTestFunction& phi, const Solver& solver,
                           std::size_t stride = 1);

}  // namespace tricam
