#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tricam/errors.hpp"
#include "tricam/kernels.hpp"

using namespace tricam;
using tricam::testing::random_smooth_field;
using tricam::testing::rel_sup;
using tricam::testing::smoothed_peakon;

namespace {

const KernelBackend kProduction[] = {KernelBackend::FourierSymbol, KernelBackend::RecursiveScan};
const KernelBackend kAll[] = {KernelBackend::FourierSymbol, KernelBackend::RecursiveScan, KernelBackend::DirectOracle};

Grid1D two_pi_grid(int periods, std::size_t n) { return make_grid(0, 2 * std::numbers::pi * periods, n); }

Field impulse(const Grid1D& g, std::size_t at) {
    Field f(g);
    f[at] = 1.0 / g.dx;
    return f;
}

}  // namespace

TEST(ExpKernel, AmplitudesAndIntegrals) {
    EXPECT_DOUBLE_EQ(ExpKernel::g1().amplitude, 0.5);
    // (4 - d_xx) A e^{-2|x|} = 4A delta fixes A = 1/4.
    EXPECT_DOUBLE_EQ(ExpKernel::g2().amplitude, 0.25);
    EXPECT_DOUBLE_EQ(ExpKernel::g1().integral(), 1.0);
    EXPECT_DOUBLE_EQ(ExpKernel::g2().integral(), 0.25);
    // Quadrature of the sampled periodized kernels.
    const Grid1D g = make_symmetric_grid(20, 4096);
    for (const ExpKernel k : {ExpKernel::g1(), ExpKernel::g2()}) {
        const Field s = Field::sample(g, [&](double x) { return k.periodized(x, g.length()); });
        EXPECT_NEAR(integrate(s), k.integral(), 1e-5);
    }
}

TEST(ExpKernel, SymbolAndPeriodization) {
    EXPECT_DOUBLE_EQ(ExpKernel::g1().symbol(1.0).real(), 0.5);
    EXPECT_DOUBLE_EQ(ExpKernel::g2().symbol(1.0).real(), 0.2);
    EXPECT_DOUBLE_EQ(ExpKernel::helmholtz(1.0, true).symbol(1.0).imag(), 0.5);
    // Closed form against a long image sum.
    const ExpKernel k = ExpKernel::g1();
    const double P = 5.0;
    for (double x : {0.3, 1.7, 2.5, 4.1}) {
        double sum = 0.0;
        for (int m = -60; m <= 60; ++m) sum += k.free_space(x + m * P);
        EXPECT_NEAR(k.periodized(x, P), sum, 1e-14);
    }
    const ExpKernel d = ExpKernel::helmholtz(2.0, true);
    for (double x : {0.3, 1.7, 2.5, 4.1}) {
        double sum = 0.0;
        for (int m = -60; m <= 60; ++m) sum += d.free_space(x + m * P);
        EXPECT_NEAR(d.periodized(x, P), sum, 1e-14);
    }
}

TEST(KernelBackend, ParseAndPrint) {
    EXPECT_EQ(parse_kernel_backend("fourier"), KernelBackend::FourierSymbol);
    EXPECT_EQ(parse_kernel_backend("scan"), KernelBackend::RecursiveScan);
    EXPECT_EQ(parse_kernel_backend("oracle"), KernelBackend::DirectOracle);
    EXPECT_EQ(to_string(KernelBackend::RecursiveScan), "scan");
    EXPECT_THROW(parse_kernel_backend("fft"), InvalidArgumentError);
}

TEST(ConvG1, CosineHalved) {
    const Grid1D g = two_pi_grid(4, 512);
    const Field f = Field::sample(g, [](double x) { return std::cos(x); });
    EXPECT_LE(max_abs_diff(conv_g1(f), 0.5 * f), 1e-14);
    EXPECT_LE(max_abs_diff(conv_g1(f, KernelBackend::RecursiveScan), 0.5 * f), 1e-10);
    EXPECT_LE(max_abs_diff(conv_g1(f, KernelBackend::DirectOracle), 0.5 * f), 1e-10);
}

TEST(ConvG1, ZeroInZeroOut) {
    const Field z(make_symmetric_grid(20, 256));
    for (auto b : kAll) {
        EXPECT_EQ(conv_g1(z, b).sup_norm(), 0.0);
        EXPECT_EQ(conv_g2_dx(z, b).sup_norm(), 0.0);
    }
}

TEST(ConvG1, NarrowGaussianMatchesOracle) {
    const Grid1D g = make_symmetric_grid(20, 8192);
    const Field f = Field::sample(g, [](double x) { return std::exp(-x * x / (2 * 0.01)); });
    EXPECT_LE(rel_sup(conv_g1(f), conv_g1(f, KernelBackend::DirectOracle)), 1e-10);
}

TEST(ConvG2, Examples) {
    const Grid1D g = two_pi_grid(4, 512);
    const Field f = Field::sample(g, [](double x) { return std::cos(x); });
    const Field one(g, 1.0);
    for (auto b : kAll) {
        EXPECT_LE(max_abs_diff(conv_g2(f, b), 0.2 * f), 1e-10) << to_string(b);
        EXPECT_LE(max_abs_diff(conv_g2(one, b), Field(g, 0.25)), 1e-12) << to_string(b);
    }
}

TEST(ConvG2, SmoothedPeakonMatchesOracle) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    const Field f = smoothed_peakon(g);
    // Highest-order cell rule: the oracle is then limited by interpolation of f, not by the kernel.
    EXPECT_LE(rel_sup(conv_g2(f), direct_conv_oracle(f, ExpKernel::g2(), 12)), 1e-10);
}

TEST(ConvDx, CosineAndConstant) {
    const Grid1D g = two_pi_grid(4, 512);
    const Field f = Field::sample(g, [](double x) { return std::cos(x); });
    const Field s = Field::sample(g, [](double x) { return std::sin(x); });
    const Field one(g, 1.0);
    for (auto b : kAll) {
        EXPECT_LE(max_abs_diff(conv_g1_dx(f, b), -0.5 * s), 1e-10) << to_string(b);
        EXPECT_LE(max_abs_diff(conv_g2_dx(f, b), -0.2 * s), 1e-10) << to_string(b);
        EXPECT_LE(conv_g1_dx(one, b).sup_norm(), 1e-12) << to_string(b);
        EXPECT_LE(conv_g2_dx(one, b).sup_norm(), 1e-12) << to_string(b);
    }
}

TEST(ConvDx, ComposesWithDerivative) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    const Field gauss = Field::sample(g, [](double x) { return std::exp(-x * x); });
    EXPECT_LE(max_abs_diff(conv_g1_dx(gauss), derivative(conv_g1(gauss))), 1e-10);
    const Field peak = peakon_field({{{1.0, 0.5}}, 1.0}, g);
    EXPECT_LE(max_abs_diff(conv_g2_dx(peak), derivative(conv_g2(peak))), 1e-10);
}

TEST(RecursiveScan, ImpulseResponseIsThePeriodizedKernel) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    const std::size_t at = 300;
    for (int pts : {2, kDefaultStencilPoints}) {
        for (const ExpKernel k : {ExpKernel::g1(), ExpKernel::g2()}) {
            const Field r = recursive_exp_conv(impulse(g, at), k, pts);
            EXPECT_NEAR(r[at], k.amplitude, 0.05 * k.amplitude);
            // Away from the spike the kernel is smooth across the stencil.
            double err = 0.0;
            for (std::size_t i = 0; i < g.n; ++i) {
                const double d = g.wrap(g.x(i) - g.x(at));
                if (std::abs(d) < 10 * g.dx) continue;
                err = std::max(err, std::abs(r[i] - k.periodized(d, g.length())));
            }
            EXPECT_LE(err, pts == 2 ? 1e-3 : 1e-6) << pts;
        }
    }
}

TEST(RecursiveScan, MatchesOracleOnRandomSmoothFields) {
    std::mt19937_64 rng(5);
    const Grid1D g = make_symmetric_grid(20, 1024);
    for (int trial = 0; trial < 5; ++trial) {
        const Field f = random_smooth_field(g, rng);
        for (const ExpKernel k : {ExpKernel::g1(), ExpKernel::g2(), ExpKernel::helmholtz(1.0, true),
                                  ExpKernel::helmholtz(2.0, true)}) {
            for (int pts : {2, 4, kDefaultStencilPoints}) {
                EXPECT_LE(rel_sup(recursive_exp_conv(f, k, pts), direct_conv_oracle(f, k, pts)), 1e-12)
                    << "decay " << k.decay << " diff " << k.differentiated << " pts " << pts;
            }
        }
    }
}

TEST(RecursiveScan, RejectsNonPeriodicAndBadStencil) {
    const Field f(make_grid(0, 1, 32, false), 1.0);
    EXPECT_THROW(recursive_exp_conv(f, ExpKernel::g1()), InvalidArgumentError);
    const Field p(make_grid(0, 1, 32), 1.0);
    EXPECT_THROW(recursive_exp_conv(p, ExpKernel::g1(), 3), InvalidArgumentError);
}

TEST(DirectOracle, ImpulseAndSizeGuard) {
    const Grid1D g = make_symmetric_grid(20, 512);
    const Field r = direct_conv_oracle(impulse(g, 100), ExpKernel::g1(), 2);
    EXPECT_NEAR(r[100], 0.5, 0.03);
    EXPECT_NEAR(r[140], ExpKernel::g1().periodized(40 * g.dx, g.length()), 1e-3);
    EXPECT_THROW(direct_conv_oracle(Field(make_symmetric_grid(20, kOracleNodeCap + 2)), ExpKernel::g1()),
                 SizeGuardError);
}

TEST(DirectOracle, AgreesWithFourierOnSmoothFields) {
    std::mt19937_64 rng(9);
    const Grid1D g = make_symmetric_grid(20, 1024);
    const Field f = random_smooth_field(g, rng);
    EXPECT_LE(rel_sup(conv_g1(f, KernelBackend::DirectOracle), conv_g1(f)), 1e-8);
    EXPECT_LE(rel_sup(conv_g2_dx(f, KernelBackend::DirectOracle), conv_g2_dx(f)), 1e-8);
}

TEST(KernelInvariants, HelmholtzResidualsAndIdentities) {
    std::mt19937_64 rng(21);
    const Grid1D g = make_symmetric_grid(20, 1024);
    for (int trial = 0; trial < 10; ++trial) {
        const Field f = random_smooth_field(g, rng);
        const double fs = f.sup_norm();
        for (auto b : kProduction) {
            const Field g1 = conv_g1(f, b), g2 = conv_g2(f, b);
            EXPECT_LE((g1 - second_derivative(g1) - f).sup_norm(), 1e-8 * fs);
            EXPECT_LE((4.0 * g2 - second_derivative(g2) - f).sup_norm(), 1e-8 * fs);
            EXPECT_LE(max_abs_diff(second_derivative(g1), g1 - f), 1e-8 * fs);
            EXPECT_LE(max_abs_diff(second_derivative(g2), 4.0 * g2 - f), 1e-8 * fs);
        }
    }
}

TEST(KernelInvariants, BackendsAgreePairwise) {
    std::mt19937_64 rng(22);
    const Grid1D g = make_symmetric_grid(20, 1024);
    for (int trial = 0; trial < 5; ++trial) {
        const Field f = random_smooth_field(g, rng);
        for (auto op : {conv_g1, conv_g2, conv_g1_dx, conv_g2_dx}) {
            const Field a = op(f, KernelBackend::FourierSymbol);
            const Field b = op(f, KernelBackend::RecursiveScan);
            const Field c = op(f, KernelBackend::DirectOracle);
            EXPECT_LE(rel_sup(b, a), 1e-7);
            EXPECT_LE(rel_sup(c, a), 1e-7);
            EXPECT_LE(rel_sup(c, b), 1e-7);
        }
    }
}

TEST(KernelInvariants, YoungBoundAndPositivity) {
    std::mt19937_64 rng(23);
    const Grid1D g = make_symmetric_grid(20, 1024);
    for (int trial = 0; trial < 10; ++trial) {
        const Field f = random_smooth_field(g, rng, true);
        for (auto b : kAll) {
            EXPECT_LE(conv_g1(f, b).sup_norm(), 0.5 * lp_norm(f, 1.0) * (1 + 1e-12));
            EXPECT_GE(conv_g1(f, b).min(), -1e-12);
            EXPECT_GE(conv_g2(f, b).min(), -1e-12);
        }
    }
    // Unresolved spikes: the scan and the oracle stay positive; the truncated
    // Fourier symbol rings at the 1e-8 level.
    for (auto b : {KernelBackend::RecursiveScan, KernelBackend::DirectOracle}) {
        EXPECT_GE(conv_g1(impulse(g, 7), b).min(), 0.0) << to_string(b);
        EXPECT_GE(conv_g2(impulse(g, 7), b).min(), 0.0) << to_string(b);
    }
    EXPECT_GE(conv_g2(impulse(g, 7)).min(), -1e-7);
}

TEST(KernelInvariants, RejectNonFinite) {
    Field f(make_symmetric_grid(20, 64));
    f[1] = std::numeric_limits<double>::infinity();
    for (auto b : kAll) EXPECT_THROW(conv_g1(f, b), NonFiniteError);
}
