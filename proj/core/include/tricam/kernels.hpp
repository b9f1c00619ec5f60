#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include "tricam/field.hpp"

namespace tricam {

// The exponential Green's kernel amplitude * exp(-decay*|x|) of (decay^2 - d_xx)^{-1},
// or its x-derivative -amplitude*decay*sgn(x)*exp(-decay*|x|) when differentiated.
struct ExpKernel {
    double decay = 1.0;
    double amplitude = 0.5;
    bool differentiated = false;

    // Kernel of (decay^2 - d_xx)^{-1}: amplitude = 1/(2*decay), integral 1/decay^2.
    static ExpKernel helmholtz(double decay, bool differentiated = false) {
        return ExpKernel{decay, 1.0 / (2.0 * decay), differentiated};
    }
    static ExpKernel g1() { return helmholtz(1.0); }
    static ExpKernel g2() { return helmholtz(2.0); }

    // Fourier multiplier of the convolution operator.
    std::complex<double> symbol(double k) const noexcept;
    // Free-space kernel value (derivative kernel is 0 at x = 0).
    double free_space(double x) const noexcept;
    // Sum over images with the given period; closed form, valid away from the cusp.
    double periodized(double x, double period) const noexcept;
    // Integral over the real line (0 for the odd, differentiated kernel).
    double integral() const noexcept { return differentiated ? 0.0 : 2.0 * amplitude / decay; }
};

enum class KernelBackend {
    FourierSymbol,   // multiply each mode by the exact symbol
    RecursiveScan,   // O(n) two-sided exponential prefix scan
    DirectOracle     // O(n^2) nodal quadrature, ground truth for the scan
};

std::string_view to_string(KernelBackend b) noexcept;
// Accepts fourier | scan | oracle. Throws InvalidArgumentError otherwise.
KernelBackend parse_kernel_backend(std::string_view s);

// Points in the local interpolation stencil used by the scan and oracle
// quadrature rule. 2 is the cell trapezoid; the default gives degree 7.
inline constexpr int kDefaultStencilPoints = 8;
inline constexpr std::size_t kOracleNodeCap = 8192;

// O(n) convolution with the periodized kernel via a left-decaying and a
// right-decaying recursion, e^{-decay*dx} per step, plus a geometric-series
// wrap correction. Requires a periodic grid.
Field recursive_exp_conv(const Field& f, const ExpKernel& kernel, int stencil_points = kDefaultStencilPoints);

// O(n^2) evaluation of the same nodal rule with the closed-form periodized
// kernel integrated per cell by Gauss-Legendre. Throws SizeGuardError above
// kOracleNodeCap nodes.
Field direct_conv_oracle(const Field& f, const ExpKernel& kernel, int stencil_points = kDefaultStencilPoints);

Field apply_kernel(const Field& f, const ExpKernel& kernel, KernelBackend backend = KernelBackend::FourierSymbol);

// G1*f = (1 - d_xx)^{-1} f, G1 = exp(-|x|)/2.
Field conv_g1(const Field& f, KernelBackend backend = KernelBackend::FourierSymbol);
// G2*f = (4 - d_xx)^{-1} f, G2 = exp(-2|x|)/8.
Field conv_g2(const Field& f, KernelBackend backend = KernelBackend::FourierSymbol);
// d_x (G1*f).
Field conv_g1_dx(const Field& f, KernelBackend backend = KernelBackend::FourierSymbol);
// d_x (G2*f).
Field conv_g2_dx(const Field& f, KernelBackend backend = KernelBackend::FourierSymbol);

}  // namespace tricam
