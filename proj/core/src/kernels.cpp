#include "tricam/kernels.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cell_rule.hpp"
#include "tricam/errors.hpp"
#include "tricam/spectral.hpp"

namespace tricam {

std::complex<double> ExpKernel::symbol(double k) const noexcept {
    const double base = 2.0 * amplitude * decay / (decay * decay + k * k);
    return differentiated ? std::complex<double>(0.0, k * base) : std::complex<double>(base);
}

double ExpKernel::free_space(double x) const noexcept {
    const double e = amplitude * std::exp(-decay * std::abs(x));
    if (!differentiated) return e;
    if (x == 0.0) return 0.0;
    return x > 0.0 ? -decay * e : decay * e;
}

double ExpKernel::periodized(double x, double period) const noexcept {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    // Images to the right and left of r in (0, period).
    const double near = std::exp(-decay * r);
    const double far = std::exp(-decay * (period - r));
    const double wrap = 1.0 / (1.0 - std::exp(-decay * period));
    if (!differentiated) return amplitude * (near + far) * wrap;
    return -amplitude * decay * (near - far) * wrap;
}

std::string_view to_string(KernelBackend b) noexcept {
    switch (b) {
        case KernelBackend::FourierSymbol: return "fourier";
        case KernelBackend::RecursiveScan: return "scan";
        case KernelBackend::DirectOracle: return "oracle";
    }
    return "unknown";
}

KernelBackend parse_kernel_backend(std::string_view s) {
    if (s == "fourier") return KernelBackend::FourierSymbol;
    if (s == "scan") return KernelBackend::RecursiveScan;
    if (s == "oracle") return KernelBackend::DirectOracle;
    throw InvalidArgumentError("unknown kernel backend '" + std::string(s) + "' (expected fourier|scan|oracle)");
}

namespace {

void require_periodic(const Field& f, const char* what) {
    if (!f.grid().periodic) throw InvalidArgumentError(std::string(what) + " requires a periodic grid");
}

// mu_k = int_0^1 exp(-beta (1 - s)) s^k ds for k < count.
std::vector<long double> exp_moments(long double beta, int count) {
    std::vector<long double> mu(count);
    if (beta > count) {
        mu[0] = -std::expm1(-beta) / beta;
        for (int k = 1; k < count; ++k) mu[k] = (1.0L - k * mu[k - 1]) / beta;
        return mu;
    }
    for (int k = 0; k < count; ++k) {
        long double term = 1.0L / (k + 1);
        long double sum = term;
        for (int q = 1; q < 400; ++q) {
            term *= -beta / (k + q + 1);
            sum += term;
            if (std::abs(term) < 1e-24L * std::abs(sum)) break;
        }
        mu[k] = sum;
    }
    return mu;
}

// Weights w_j with int_{x_c}^{x_c+h} exp(-decay (x_c + h - y)) P(y) dy = sum_j w_j f(x_c + j h).
std::vector<double> left_cell_weights(const detail::CellStencil& st, double decay, double h) {
    const auto mu = exp_moments(static_cast<long double>(decay) * h, st.points());
    std::vector<double> w(st.points());
    for (int j = 0; j < st.points(); ++j) {
        long double acc = 0.0L;
        for (int k = 0; k < st.points(); ++k) acc += st.basis[j][k] * mu[k];
        w[j] = static_cast<double>(acc * h);
    }
    return w;
}

}  // namespace

Field recursive_exp_conv(const Field& f, const ExpKernel& kernel, int stencil_points) {
    require_periodic(f, "recursive_exp_conv");
    require_finite(f, "recursive_exp_conv");
    const auto st = detail::make_cell_stencil(stencil_points);
    const std::size_t n = f.size();
    const double h = f.grid().dx;
    const double step = std::exp(-kernel.decay * h);
    const double wrap = 1.0 / (-std::expm1(-kernel.decay * f.grid().length()));
    const auto w = left_cell_weights(st, kernel.decay, h);
    const auto vals = f.values();
    const auto at = [&](long long i) { return vals[static_cast<std::size_t>(((i % static_cast<long long>(n)) + n) % n)]; };

    // Partial integrals from x_0 rightwards (left-decaying) and from x_n leftwards.
    std::vector<double> left(n + 1, 0.0), right(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double inc = 0.0;
        const long long c = static_cast<long long>(i) - 1;
        for (int j = 0; j < st.points(); ++j) inc += w[j] * at(c + st.first() + j);
        left[i] = step * left[i - 1] + inc;
    }
    for (std::size_t i = n; i-- > 0;) {
        double inc = 0.0;
        const long long c = static_cast<long long>(i);
        // Mirror of the left rule: node x_{c+1-j'} carries weight w of offset j'.
        for (int j = 0; j < st.points(); ++j) inc += w[j] * at(c + 1 - (st.first() + j));
        right[i] = step * right[i + 1] + inc;
    }
    const double left_tail = left[n] * wrap;    // int_{-inf}^{x_0}
    const double right_tail = right[0] * wrap;  // int_{x_n}^{inf}

    Field out(f.grid());
    double decay_from_left = 1.0;
    std::vector<double> decay_pow(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        decay_pow[i] = decay_from_left;
        decay_from_left *= step;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double l = left[i] + decay_pow[i] * left_tail;
        const double r = right[i] + decay_pow[n - i] * right_tail;
        out[i] = kernel.differentiated ? kernel.amplitude * kernel.decay * (r - l) : kernel.amplitude * (l + r);
    }
    return out;
}

Field direct_conv_oracle(const Field& f, const ExpKernel& kernel, int stencil_points) {
    require_periodic(f, "direct_conv_oracle");
    require_finite(f, "direct_conv_oracle");
    const std::size_t n = f.size();
    if (n > kOracleNodeCap) {
        throw SizeGuardError("direct_conv_oracle: " + std::to_string(n) + " nodes exceeds cap " +
                             std::to_string(kOracleNodeCap));
    }
    const auto st = detail::make_cell_stencil(stencil_points);
    const auto gauss = detail::gauss_legendre_unit(16);
    const double h = f.grid().dx;
    const double period = f.grid().length();

    // weight[r][j]: contribution of node (i + r + first + j) to output i through
    // the cell [x_{i+r}, x_{i+r+1}]. The kernel argument x_i - y stays inside
    // (0, period) after wrapping, so each cell integrand is smooth.
    const int pts = st.points();
    std::vector<double> weight(n * pts, 0.0);
    std::vector<std::vector<double>> basis_at(pts, std::vector<double>(gauss.nodes.size()));
    for (int j = 0; j < pts; ++j)
        for (std::size_t q = 0; q < gauss.nodes.size(); ++q)
            basis_at[j][q] = static_cast<double>(detail::eval_basis(st, j, gauss.nodes[q]));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t q = 0; q < gauss.nodes.size(); ++q) {
            const double arg = period - (static_cast<double>(r) + gauss.nodes[q]) * h;
            const double kv = kernel.periodized(arg, period) * gauss.weights[q] * h;
            for (int j = 0; j < pts; ++j) weight[r * pts + j] += kv * basis_at[j][q];
        }
    }

    const auto vals = f.values();
    Field out(f.grid());
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const long long base = static_cast<long long>(i + r) + st.first();
            for (int j = 0; j < pts; ++j) {
                const auto idx = static_cast<std::size_t>(((base + j) % static_cast<long long>(n) + n) % n);
                acc += weight[r * pts + j] * vals[idx];
            }
        }
        out[i] = acc;
    }
    return out;
}

Field apply_kernel(const Field& f, const ExpKernel& kernel, KernelBackend backend) {
    switch (backend) {
        case KernelBackend::RecursiveScan: return recursive_exp_conv(f, kernel);
        case KernelBackend::DirectOracle: return direct_conv_oracle(f, kernel);
        case KernelBackend::FourierSymbol: break;
    }
    require_finite(f, "apply_kernel");
    const Grid1D& g = f.grid();
    return spectral::apply_symbol(f, [&](double k, std::size_t m) {
        if (kernel.differentiated && spectral::is_nyquist(g, m)) return std::complex<double>(0.0);
        return kernel.symbol(k);
    });
}

Field conv_g1(const Field& f, KernelBackend backend) { return apply_kernel(f, ExpKernel::g1(), backend); }
Field conv_g2(const Field& f, KernelBackend backend) { return apply_kernel(f, ExpKernel::g2(), backend); }
Field conv_g1_dx(const Field& f, KernelBackend backend) {
    return apply_kernel(f, ExpKernel::helmholtz(1.0, true), backend);
}
Field conv_g2_dx(const Field& f, KernelBackend backend) {
    return apply_kernel(f, ExpKernel::helmholtz(2.0, true), backend);
}

}  // namespace tricam
