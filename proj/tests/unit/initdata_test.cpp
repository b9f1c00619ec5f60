#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tricam/errors.hpp"
#include "tricam/initdata.hpp"

using namespace tricam;

TEST(Bump, ValuesAndSupport) {
    EXPECT_NEAR(bump(0.0), 0.36787944117144233, 1e-15);
    EXPECT_EQ(bump(1.0), 0.0);
    EXPECT_EQ(bump(-1.0), 0.0);
    EXPECT_EQ(bump(1.5), 0.0);
    EXPECT_NEAR(bump(0.5), std::exp(1.0 / (0.25 - 1.0)), 1e-15);
}

TEST(MollifierIndex, Validation) {
    EXPECT_THROW(MollifierIndex(0), InvalidArgumentError);
    EXPECT_DOUBLE_EQ(MollifierIndex(4).half_width(), 0.25);
}

TEST(Mollifier, UnitMassAndSupport) {
    const Grid1D g = make_symmetric_grid(20, 8192);
    for (int n : {1, 2, 8, 16, 32}) {
        const Field rho = mollifier(MollifierIndex(n), g);
        EXPECT_NEAR(integrate(rho), 1.0, 1e-14) << n;
        EXPECT_GE(rho.min(), 0.0);
        for (std::size_t i = 0; i < g.n; ++i) {
            if (std::abs(g.wrap(g.x(i))) >= 1.0 / n) EXPECT_EQ(rho[i], 0.0);
        }
    }
    EXPECT_THROW(mollifier(MollifierIndex(64), make_symmetric_grid(20, 1024)), UnderResolvedError);
}

TEST(Mollifier, AnalyticNormalizationIsApproached) {
    // int rho = 0.443993816168...
    const Grid1D g = make_symmetric_grid(20, 16384);
    const Field raw = Field::sample(g, [](double x) { return bump(x); });
    EXPECT_NEAR(integrate(raw), 0.44399381616807943, 1e-10);
}

TEST(Mollify, ConstantAndCosine) {
    const Grid1D g = make_grid(0, 2 * std::numbers::pi * 4, 2048);
    const Field one(g, 1.0);
    EXPECT_LE(max_abs_diff(mollify(one, MollifierIndex(2)), one), 1e-14);
    const Field f = Field::sample(g, [](double x) { return std::cos(3 * x); });
    const Field m = mollify(f, MollifierIndex(2));
    // rho_n is even, so cos(kx) maps to rho_hat(k) cos(kx).
    const double ratio = integrate(product(m, f)) / integrate(product(f, f));
    EXPECT_LT(std::abs(ratio), 1.0);
    EXPECT_LE(max_abs_diff(m, ratio * f), 1e-12);
}

TEST(Mollify, PositivityMassAndConvergence) {
    const Grid1D g = make_symmetric_grid(20, 8192);
    const Field f = Field::sample(g, [](double x) { return std::exp(-std::abs(x - 1.0)) + 0.5 * std::exp(-x * x); });
    double prev_h1 = kInfinity, prev_l1 = kInfinity;
    for (int n : {1, 2, 4, 8, 16}) {
        const Field m = mollify(f, MollifierIndex(n));
        EXPECT_GE(m.min(), -1e-12);
        EXPECT_NEAR(integrate(m), integrate(f), 1e-10);
        const double h1 = h1_norm(m - f), l1 = lp_norm(m - f, 1.0);
        EXPECT_LT(h1, prev_h1) << n;
        EXPECT_LT(l1, prev_l1) << n;
        prev_h1 = h1;
        prev_l1 = l1;
    }
}

TEST(PeakonField, Examples) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    const Field one = peakon_field({{{1.0, 0.0}}, 1.0}, g);
    EXPECT_DOUBLE_EQ(one[512], 1.0);
    const std::size_t at_one = 512 + static_cast<std::size_t>(std::lround(1.0 / g.dx));
    EXPECT_NEAR(one[at_one], std::exp(-std::abs(g.x(at_one))), 1e-15);
    EXPECT_EQ(peakon_field({{{0.0, 0.0}}, 1.0}, g).sup_norm(), 0.0);
    const Field two = peakon_field({{{1.0, -5.0}, {1.0, 5.0}}, 1.0}, g);
    const Field sum = peakon_field({{{1.0, -5.0}}, 1.0}, g) + peakon_field({{{1.0, 5.0}}, 1.0}, g);
    EXPECT_LE(max_abs_diff(two, sum), 1e-15);
    // b-type peakons decay at rate 2.
    const Field b = peakon_field({{{1.0, 0.0}}, 2.0}, g);
    EXPECT_NEAR(b[at_one], std::exp(-2 * std::abs(g.x(at_one))), 1e-15);
}

TEST(PeakonField, Errors) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    EXPECT_THROW(peakon_field({{{1.0, 25.0}}, 1.0}, g), OutOfDomainError);
    EXPECT_THROW(peakon_field({{}, 1.0}, g), InvalidArgumentError);
}

TEST(LiftInitial, Examples) {
    const Grid1D g = make_grid(0, 2 * std::numbers::pi * 3, 256);
    EXPECT_EQ(lift_initial(Field(g)).sup_norm(), 0.0);
    const Field u = Field::sample(g, [](double x) { return 2 * std::cos(x); });
    EXPECT_LE(max_abs_diff(lift_initial(u), 0.5 * u), 1e-14);
}

TEST(LiftInitial, NonnegativeBumpGivesSlopeDomination) {
    const Grid1D g = make_symmetric_grid(20, 4096);
    const Field u0 = Field::sample(g, [](double x) { return std::exp(-x * x); });
    const Field a0 = lift_initial(u0);
    const Field ax = derivative(a0);
    EXPECT_GE(a0.min(), 0.0);
    double excess = -kInfinity;
    for (std::size_t i = 0; i < g.n; ++i) excess = std::max(excess, std::abs(ax[i]) - a0[i]);
    EXPECT_LE(excess, 1e-10);
    EXPECT_LE(max_abs_diff(compute_u(a0), u0), 1e-8);
}

TEST(Profiles, GaussianBumpIsNonnegative) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    ProfileParams p;
    p.kind = ProfileKind::GaussianBump;
    p.u_bumps = {{1.0, 0.0, 1.0}};
    p.w_bumps = {{1.0, 0.0, 1.0}};
    const InitialData d = admissible_profiles(p, g);
    EXPECT_GE(d.u0.min(), 0.0);
    EXPECT_NEAR(integrate(d.u0), std::sqrt(2 * std::numbers::pi), 1e-10);
}

TEST(Profiles, TwoBumpMassIsAdditive) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    ProfileParams p;
    p.kind = ProfileKind::TwoBump;
    p.u_bumps = {{1.0, -8.0, 0.5}, {0.5, 8.0, 0.5}};
    const InitialData d = admissible_profiles(p, g);
    const double m = std::sqrt(2 * std::numbers::pi) * 0.5;
    EXPECT_NEAR(lp_norm(d.u0, 1.0), 1.0 * m + 0.5 * m, 1e-10);
}

TEST(Profiles, SmoothedPeakonMassMatchesExactPair) {
    const Grid1D g = make_symmetric_grid(20, 65536);
    ProfileParams p;
    p.moll_n = 64;
    p.a_peakons = {{1.0, -3.0}, {1.0, 3.0}};
    const InitialData d = admissible_profiles(p, g);
    // Each unit peakon e^{-|x|} carries int u = int a = 2.
    EXPECT_NEAR(lp_norm(d.u0, 1.0), 4.0, 1e-10);
    const Field exact = peakon_field({p.a_peakons, 1.0}, g);
    EXPECT_NEAR(integrate(exact), 4.0, 1e-6);
}

TEST(Profiles, ValidationErrors) {
    const Grid1D g = make_symmetric_grid(20, 1024);
    ProfileParams p;
    p.a_peakons = {{-1.0, 0.0}};
    EXPECT_THROW(admissible_profiles(p, g), InvalidArgumentError);
    p = ProfileParams{};
    p.kind = ProfileKind::GaussianBump;
    p.u_bumps = {{1.0, 0.0, -1.0}};
    EXPECT_THROW(admissible_profiles(p, g), InvalidArgumentError);
    p = ProfileParams{};
    p.moll_n = 64;
    EXPECT_THROW(admissible_profiles(p, g), UnderResolvedError);
    EXPECT_THROW(parse_profile_kind("triangle"), InvalidArgumentError);
    EXPECT_EQ(parse_profile_kind("two-bump"), ProfileKind::TwoBump);
}

TEST(Profiles, MollifiedMomentumConvergesInL1) {
    // ||rho_n * u0 - u0||_1 for smooth u0 strictly decreases in n.
    const Grid1D g = make_symmetric_grid(20, 8192);
    const Field u0 = Field::sample(g, [](double x) { return std::exp(-(x - 1) * (x - 1)) + std::exp(-(x + 4) * (x + 4)); });
    double prev = kInfinity;
    for (int n : {1, 2, 4, 8, 16}) {
        const double e = lp_norm(mollify(u0, MollifierIndex(n)) - u0, 1.0);
        EXPECT_LT(e, prev);
        prev = e;
    }
}
