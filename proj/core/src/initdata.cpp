#include "tricam/initdata.hpp"

#include <cmath>
#include <string>

#include "tricam/errors.hpp"
#include "tricam/kernels.hpp"
#include "tricam/spectral.hpp"

namespace tricam {

double bump(double x) noexcept {
    const double ax = std::abs(x);
    if (ax >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0));
}

MollifierIndex::MollifierIndex(int n) : n_(n) {
    if (n < 1) throw InvalidArgumentError("mollifier index must be >= 1, got " + std::to_string(n));
}

namespace {

void require_resolvable(MollifierIndex n, const Grid1D& grid) {
    if (2.0 * n.half_width() < 8.0 * grid.dx) {
        throw UnderResolvedError("mollifier n=" + std::to_string(n.value()) + " has support " +
                                 std::to_string(2.0 * n.half_width()) + " < 8*dx = " + std::to_string(8.0 * grid.dx));
    }
}

// rho_n(center + d) sampled at the nodes, normalized to unit discrete mass.
Field unit_bump_at(MollifierIndex n, const Grid1D& grid, double center) {
    Field out = Field::sample(grid, [&](double x) { return bump(n.value() * grid.wrap(x - center)); });
    double sum = 0.0;
    for (double v : out.values()) sum += v;
    out *= 1.0 / (sum * grid.dx);
    return out;
}

}  // namespace

Field mollifier(MollifierIndex n, const Grid1D& grid) {
    require_resolvable(n, grid);
    return unit_bump_at(n, grid, 0.0);
}

Field mollify(const Field& f, MollifierIndex n) {
    require_finite(f, "mollify");
    const Grid1D& g = f.grid();
    require_resolvable(n, g);
    // Kernel indexed by node offset d = i - j (wrapped), as a circulant.
    Field offsets(g);
    double sum = 0.0;
    for (std::size_t d = 0; d < g.n; ++d) {
        const double dist = g.wrap(static_cast<double>(d) * g.dx);
        offsets[d] = bump(n.value() * dist);
        sum += offsets[d];
    }
    // rho_n / (sum * dx), times the quadrature dx.
    offsets *= 1.0 / sum;
    const spectral::Spectrum K = spectral::forward(offsets);
    spectral::Spectrum F = spectral::forward(f);
    for (std::size_t m = 0; m < F.size(); ++m) F[m] *= K[m];
    return spectral::inverse(F, g);
}

Field peakon_field(const PeakonParams& p, const Grid1D& grid) {
    if (p.peakons.empty()) throw InvalidArgumentError("peakon list is empty");
    for (const Peakon& pk : p.peakons) {
        if (!(pk.position > grid.x_min && pk.position < grid.x_max)) {
            throw OutOfDomainError("peakon position " + std::to_string(pk.position) + " outside (" +
                                   std::to_string(grid.x_min) + ", " + std::to_string(grid.x_max) + ")");
        }
    }
    return Field::sample(grid, [&](double x) {
        double v = 0.0;
        for (const Peakon& pk : p.peakons) v += pk.amplitude * std::exp(-p.decay * std::abs(grid.wrap(x - pk.position)));
        return v;
    });
}

Field lift_initial(const Field& u0) {
    require_finite(u0, "lift_initial");
    return conv_g1(u0);
}

std::string_view to_string(ProfileKind k) noexcept {
    switch (k) {
        case ProfileKind::GaussianBump: return "gaussian-bump";
        case ProfileKind::SmoothedPeakon: return "smoothed-peakon";
        case ProfileKind::TwoBump: return "two-bump";
    }
    return "unknown";
}

ProfileKind parse_profile_kind(std::string_view s) {
    if (s == "gaussian-bump") return ProfileKind::GaussianBump;
    if (s == "smoothed-peakon") return ProfileKind::SmoothedPeakon;
    if (s == "two-bump") return ProfileKind::TwoBump;
    throw InvalidArgumentError("unknown profile '" + std::string(s) +
                               "' (expected gaussian-bump|smoothed-peakon|two-bump)");
}

Field smoothed_peakon_momentum(const std::vector<Peakon>& peakons, MollifierIndex n, const Grid1D& grid) {
    require_resolvable(n, grid);
    if (peakons.empty()) throw InvalidArgumentError("peakon list is empty");
    Field u(grid);
    for (const Peakon& pk : peakons) {
        if (!(pk.position > grid.x_min && pk.position < grid.x_max)) {
            throw OutOfDomainError("peakon position " + std::to_string(pk.position) + " outside the domain");
        }
        u += unit_bump_at(n, grid, pk.position) * (2.0 * pk.amplitude);
    }
    return u;
}

namespace {

Field gaussian_sum(const std::vector<GaussianBump>& bumps, std::size_t count, const Grid1D& grid, const char* which) {
    if (bumps.size() < count) {
        throw InvalidArgumentError(std::string(which) + " needs " + std::to_string(count) + " bump(s), got " +
                                   std::to_string(bumps.size()));
    }
    for (std::size_t i = 0; i < count; ++i) {
        const GaussianBump& b = bumps[i];
        if (!(b.amplitude >= 0.0) || !(b.sigma > 0.0) || !(b.center > grid.x_min && b.center < grid.x_max)) {
            throw InvalidArgumentError(std::string(which) + " bump " + std::to_string(i) +
                                       " needs amplitude >= 0, sigma > 0 and an interior center");
        }
    }
    return Field::sample(grid, [&](double x) {
        double v = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double d = grid.wrap(x - bumps[i].center) / bumps[i].sigma;
            v += bumps[i].amplitude * std::exp(-0.5 * d * d);
        }
        return v;
    });
}

void require_nonnegative_peakons(const std::vector<Peakon>& peakons, const char* which) {
    for (const Peakon& p : peakons) {
        if (!(p.amplitude >= 0.0)) throw InvalidArgumentError(std::string(which) + " peakon amplitude must be >= 0");
    }
}

}  // namespace

InitialData admissible_profiles(const ProfileParams& params, const Grid1D& grid) {
    switch (params.kind) {
        case ProfileKind::GaussianBump:
            return {gaussian_sum(params.u_bumps, 1, grid, "u"), gaussian_sum(params.w_bumps, 1, grid, "w")};
        case ProfileKind::TwoBump:
            return {gaussian_sum(params.u_bumps, 2, grid, "u"), gaussian_sum(params.w_bumps, 2, grid, "w")};
        case ProfileKind::SmoothedPeakon: {
            require_nonnegative_peakons(params.a_peakons, "a");
            require_nonnegative_peakons(params.c_peakons, "c");
            const MollifierIndex n(params.moll_n);
            return {smoothed_peakon_momentum(params.a_peakons, n, grid),
                    smoothed_peakon_momentum(params.c_peakons, n, grid)};
        }
    }
    throw InvalidArgumentError("unknown profile kind");
}

State initial_state(const InitialData& data) {
    return State{0.0, lift_initial(data.u0), lift_initial(data.w0)};
}

}  // namespace tricam
