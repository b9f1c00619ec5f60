#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tricam/errors.hpp"
#include "tricam/field.hpp"

using namespace tricam;
using tricam::testing::smoothed_peakon;

TEST(Grid, DerivedSpacing) {
    EXPECT_DOUBLE_EQ(make_grid(-20, 20, 1024).dx, 0.0390625);
    EXPECT_DOUBLE_EQ(make_grid(0, 1, 16).dx, 0.0625);
    const Grid1D g = make_symmetric_grid(20, 1024);
    EXPECT_EQ(g.x(0), -20.0);
    EXPECT_DOUBLE_EQ(g.x(1023), 20.0 - g.dx);
}

TEST(Grid, RejectsBadExtent) {
    EXPECT_THROW(make_grid(1, 0, 64), InvalidExtentError);
    EXPECT_THROW(make_grid(0, 0, 64), InvalidExtentError);
    EXPECT_THROW(make_grid(0, 1, 15), InvalidExtentError);
}

TEST(Grid, WrapToNearestImage) {
    const Grid1D g = make_grid(0, 10, 100);
    EXPECT_NEAR(g.wrap(9.0), -1.0, 1e-14);
    EXPECT_NEAR(g.wrap(-9.0), 1.0, 1e-14);
    EXPECT_NEAR(g.wrap(2.5), 2.5, 1e-14);
}

TEST(Field, RejectsWrongLength) {
    const Grid1D g = make_grid(0, 1, 16);
    EXPECT_THROW(Field(g, std::vector<double>(15)), InvalidArgumentError);
}

TEST(Derivative, SineIsExactSpectrally) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    const double k = 2 * std::numbers::pi / g.length();
    const Field f = Field::sample(g, [&](double x) { return std::sin(k * x); });
    const Field want = Field::sample(g, [&](double x) { return k * std::cos(k * x); });
    EXPECT_LE(max_abs_diff(derivative(f), want), 1e-10);
}

TEST(Derivative, ConstantGivesZero) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    const Field f(g, 3.0);
    EXPECT_LE(derivative(f).sup_norm(), 1e-12);
    EXPECT_LE(derivative(f, DerivativeBackend::FiniteDifference4).sup_norm(), 1e-12);
    EXPECT_LE(second_derivative(f).sup_norm(), 1e-12);
}

// Centered difference with step dx/2 read off a grid of twice the resolution.
double fd_half_step_error(std::size_t n) {
    const Grid1D coarse = make_symmetric_grid(20, n);
    const Grid1D fine = make_symmetric_grid(20, 2 * n);
    const Field fc = smoothed_peakon(coarse);
    const Field ff = smoothed_peakon(fine);
    const Field d = derivative(fc);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fd = (ff[(2 * i + 1) % (2 * n)] - ff[(2 * i + 2 * n - 1) % (2 * n)]) / coarse.dx;
        err = std::max(err, std::abs(d[i] - fd));
    }
    return err;
}

Field nth_derivative(Field f, int order) {
    for (int k = 0; k < order; ++k) f = derivative(f);
    return f;
}

TEST(Derivative, SmoothedPeakonMatchesCenteredDifferenceToSecondOrder) {
    const double e1 = fd_half_step_error(1024), e2 = fd_half_step_error(2048);
    // Taylor remainder of the half-step centred difference: (dx/2)^2/6 * max|f^(3)|.
    const Grid1D g = make_symmetric_grid(20, 1024);
    const double h = g.dx / 2;
    EXPECT_LE(e1, 1.05 * h * h / 6 * nth_derivative(smoothed_peakon(g), 3).sup_norm());
    EXPECT_NEAR(e1 / e2, 4.0, 0.4);
}

TEST(Derivative, SpectralAndFiniteDifferenceAgreeAtFourthOrder) {
    std::mt19937_64 rng(11);
    double prev = 0.0;
    for (std::size_t n : {256u, 512u}) {
        std::mt19937_64 r = rng;
        const Grid1D g = make_symmetric_grid(20, n);
        const Field f = tricam::testing::random_smooth_field(g, r);
        const double e = max_abs_diff(derivative(f), derivative(f, DerivativeBackend::FiniteDifference4));
        if (prev > 0.0) EXPECT_GT(prev / e, 12.0);
        prev = e;
        // Leading truncation term of the 5-point stencil: dx^4/30 * max|f^(5)|.
        EXPECT_LE(e, 1.05 * std::pow(g.dx, 4) / 30 * nth_derivative(f, 5).sup_norm());
    }
}

TEST(Derivative, SecondDerivativeOfCosine) {
    const Grid1D g = make_grid(0, 2 * std::numbers::pi, 64);
    const Field f = Field::sample(g, [](double x) { return std::cos(x); });
    EXPECT_LE(max_abs_diff(second_derivative(f), -1.0 * f), 1e-12);
    EXPECT_LE(max_abs_diff(second_derivative(f, DerivativeBackend::FiniteDifference4), -1.0 * f), 1e-5);
}

TEST(Derivative, IntegralOfDerivativeVanishes) {
    std::mt19937_64 rng(3);
    const Grid1D g = make_symmetric_grid(20, 1024);
    for (int k = 0; k < 5; ++k) {
        const Field f = tricam::testing::random_smooth_field(g, rng);
        EXPECT_LE(std::abs(integrate(derivative(f))), 1e-10);
    }
}

TEST(Derivative, RejectsNonFinite) {
    const Grid1D g = make_grid(0, 1, 16);
    Field f(g);
    f[3] = std::nan("");
    EXPECT_THROW(derivative(f), NonFiniteError);
    EXPECT_THROW(integrate(f), NonFiniteError);
}

TEST(Integrate, Examples) {
    EXPECT_DOUBLE_EQ(integrate(Field(make_grid(0, 1, 16), 1.0)), 1.0);
    const Grid1D g = make_grid(0, 1, 64);
    EXPECT_LE(std::abs(integrate(Field::sample(g, [](double x) { return std::sin(2 * std::numbers::pi * x); }))),
              1e-14);
    const Field gauss = Field::sample(make_symmetric_grid(20, 1024), [](double x) { return std::exp(-x * x); });
    EXPECT_NEAR(integrate(gauss), std::sqrt(std::numbers::pi), 1e-10);
}

TEST(LpNorm, Examples) {
    const Grid1D g = make_grid(0, 1, 16);
    EXPECT_DOUBLE_EQ(lp_norm(Field(g, 2.0), kInfinity), 2.0);
    EXPECT_DOUBLE_EQ(lp_norm(Field(g, 1.0), 2.0), 1.0);
    EXPECT_THROW(lp_norm(Field(g, 1.0), 0.5), InvalidArgumentError);
    EXPECT_DOUBLE_EQ(lp_norm(Field(g, -2.0), 1.0), 2.0);
}

TEST(LpNorm, SmoothedPeakonMatchesRefinedQuadrature) {
    // rho has a stretched-exponential spectrum, so the base grid needs ~100 nodes per support.
    const double coarse = lp_norm(smoothed_peakon(make_symmetric_grid(20, 2048)), 1.5);
    const double fine = lp_norm(smoothed_peakon(make_symmetric_grid(20, 8192)), 1.5);
    EXPECT_NEAR(coarse, fine, 1e-8);
}

TEST(LpNorm, RefinementConvergesAtLeastSecondOrder) {
    auto norm = [](std::size_t n) {
        const Field f =
            Field::sample(make_symmetric_grid(20, n), [](double x) { return std::exp(-std::abs(x)) * (1 + x * x); });
        return lp_norm(f, 3.0);
    };
    const double d1 = std::abs(norm(128) - norm(256)), d2 = std::abs(norm(256) - norm(512));
    EXPECT_GT(d1 / d2, 3.5);
}

TEST(H1Norm, Examples) {
    EXPECT_EQ(h1_norm(Field(make_grid(0, 1, 32))), 0.0);
    const Field s = Field::sample(make_grid(0, 2 * std::numbers::pi, 128), [](double x) { return std::sin(x); });
    EXPECT_NEAR(h1_norm(s), std::sqrt(2 * std::numbers::pi), 1e-12);
}

TEST(H1Norm, GaussianMatchesClosedFormAndRefinement) {
    auto gauss = [](std::size_t n) {
        return Field::sample(make_symmetric_grid(20, n), [](double x) { return std::exp(-x * x); });
    };
    const double want = std::sqrt(2.0 * std::sqrt(std::numbers::pi / 2.0));
    EXPECT_NEAR(h1_norm(gauss(1024)), h1_norm(gauss(4096)), 1e-8);
    EXPECT_NEAR(h1_norm(gauss(1024)), want, 1e-8);
}

TEST(Field, ArithmeticRequiresSameGrid) {
    const Field a(make_grid(0, 1, 16), 1.0), b(make_grid(0, 2, 16), 1.0);
    EXPECT_THROW(a + b, InvalidArgumentError);
    EXPECT_THROW(product(a, b), InvalidArgumentError);
}
