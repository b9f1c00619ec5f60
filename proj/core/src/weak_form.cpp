#include "tricam/weak_form.hpp"

#include <cmath>
#include <string>

#include "tricam/errors.hpp"
#include "tricam/initdata.hpp"
#include "tricam/kernels.hpp"

namespace tricam {

namespace {

// d/ds exp(1/(s^2 - 1)) = -2s/(s^2-1)^2 * exp(...)
double bump_prime(double s) noexcept {
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = s * s - 1.0;
    return -2.0 * s / (q * q) * bump(s);
}

struct SliceTerms {
    double a_phi = 0.0;  // int a phi
    double c_phi = 0.0;
    double a_int = 0.0;  // int of the R_a integrand without the time weight
    double c_int = 0.0;
};

SliceTerms slice_terms(const State& s, const BumpTestFunction& phi, const Solver& solver) {
    const KernelBackend backend = solver.options().backend;
    const Field b = solver.recover_b(s.a, s.c);
    const Forcing one = assemble_f1_g1(s.a, s.c, b);
    const Forcing two = assemble_f2_g2(s.a, s.c, b);
    const Field f1 = conv_g1(one.f, backend), g1 = conv_g1(one.g, backend);
    const Field f2 = conv_g1(two.f, backend), g2 = conv_g1(two.g, backend);
    const Field ax = derivative(s.a), cx = derivative(s.c);

    const Grid1D& grid = s.a.grid();
    SliceTerms out;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double p = phi.value(s.t, x);
        const double pt = phi.d_t(s.t, x);
        const double px = phi.d_x(s.t, x);
        if (p == 0.0 && pt == 0.0 && px == 0.0) continue;
        out.a_phi += s.a[i] * p;
        out.c_phi += s.c[i] * p;
        out.a_int += s.a[i] * pt + ax[i] * b[i] * p - 0.5 * f1[i] * px + 0.5 * g1[i] * p;
        out.c_int += s.c[i] * pt + cx[i] * b[i] * p - 0.5 * f2[i] * px + 0.5 * g2[i] * p;
    }
    out.a_phi *= grid.dx;
    out.c_phi *= grid.dx;
    out.a_int *= grid.dx;
    out.c_int *= grid.dx;
    return out;
}

}  // namespace

double BumpTestFunction::value(double t, double x) const noexcept {
    return bump((t - t_center) / t_half_width) * bump((x - x_center) / x_half_width);
}

double BumpTestFunction::d_t(double t, double x) const noexcept {
    return bump_prime((t - t_center) / t_half_width) / t_half_width * bump((x - x_center) / x_half_width);
}

double BumpTestFunction::d_x(double t, double x) const noexcept {
    return bump((t - t_center) / t_half_width) * bump_prime((x - x_center) / x_half_width) / x_half_width;
}

WeakResidual weak_residual(std::span<const State> slices, const BumpTestFunction& phi, const Solver& solver,
                           std::size_t stride) {
    if (stride == 0) throw InvalidArgumentError("weak_residual: stride must be >= 1");
    if (!(phi.t_half_width > 0.0) || !(phi.x_half_width > 0.0)) {
        throw InvalidArgumentError("weak_residual: test function widths must be positive");
    }
    if (slices.size() < 2 || (slices.size() - 1) % stride != 0 || (slices.size() - 1) / stride < 1) {
        throw InvalidArgumentError("weak_residual: need >= 2 slices and (slices - 1) divisible by stride, got " +
                                   std::to_string(slices.size()) + " slices, stride " + std::to_string(stride));
    }
    const Grid1D& grid = slices.front().a.grid();
    for (std::size_t k = 0; k < slices.size(); ++k) {
        require_same_grid(slices.front().a, slices[k].a, "weak_residual");
        require_same_grid(slices.front().a, slices[k].c, "weak_residual");
        if (k > 0 && !(slices[k].t > slices[k - 1].t)) {
            throw InvalidArgumentError("weak_residual: slice times must increase");
        }
    }
    const double t_first = slices.front().t, t_last = slices.back().t;
    if (phi.t_center + phi.t_half_width > t_last || phi.t_center + phi.t_half_width <= t_first) {
        throw OutOfDomainError("weak_residual: test function time support leaves [t0, T]");
    }
    if (phi.x_center - phi.x_half_width < grid.x_min || phi.x_center + phi.x_half_width > grid.x_max) {
        throw OutOfDomainError("weak_residual: test function space support leaves the domain");
    }

    WeakResidual r;
    SliceTerms prev{};
    double t_prev = 0.0;
    for (std::size_t k = 0; k < slices.size(); k += stride) {
        const State& s = slices[k];
        const bool active = std::abs(s.t - phi.t_center) < phi.t_half_width;
        const SliceTerms cur = active ? slice_terms(s, phi, solver) : SliceTerms{};
        if (k == 0) {
            r.r_a += cur.a_phi;
            r.r_c += cur.c_phi;
        } else {
            const double h = s.t - t_prev;
            r.r_a += 0.5 * h * (prev.a_int + cur.a_int);
            r.r_c += 0.5 * h * (prev.c_int + cur.c_int);
        }
        prev = cur;
        t_prev = s.t;
    }
    return r;
}

}  // namespace tricam
