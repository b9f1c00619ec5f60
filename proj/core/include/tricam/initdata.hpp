#pragma once

#include <string_view>
#include <vector>

#include "tricam/dynamics.hpp"
#include "tricam/field.hpp"

namespace tricam {

// The C-infinity bump exp(1/(x^2 - 1)) on |x| < 1, zero elsewhere (including |x| = 1).
double bump(double x) noexcept;

// Index n of the mollifier rho_n(x) = n rho(n x) / int rho. Must be >= 1.
class MollifierIndex {
public:
    explicit MollifierIndex(int n);
    int value() const noexcept { return n_; }
    double half_width() const noexcept { return 1.0 / n_; }

private:
    int n_;
};

// rho_n sampled at the grid nodes (centred at x = 0, periodic wrap) and
// rescaled so that integrate() returns exactly 1. Throws UnderResolvedError
// when the support 2/n spans fewer than 8 cells.
Field mollifier(MollifierIndex n, const Grid1D& grid);

// Periodic convolution rho_n * f through the Fourier backend.
Field mollify(const Field& f, MollifierIndex n);

struct Peakon {
    double amplitude = 1.0;
    double position = 0.0;
};

// sum_i A_i exp(-decay |x - x_i|). decay is 1 for the a and c components and 2 for b.
struct PeakonParams {
    std::vector<Peakon> peakons;
    double decay = 1.0;
};

// Exact nodal samples, nearest periodic image. Throws OutOfDomainError for
// positions outside (x_min, x_max) and InvalidArgumentError for an empty list.
Field peakon_field(const PeakonParams& p, const Grid1D& grid);

// a0 = G1 * u0, the inverse of u = a - a_xx.
Field lift_initial(const Field& u0);

enum class ProfileKind { GaussianBump, SmoothedPeakon, TwoBump };

std::string_view to_string(ProfileKind k) noexcept;
// gaussian-bump | smoothed-peakon | two-bump
ProfileKind parse_profile_kind(std::string_view s);

struct GaussianBump {
    double amplitude = 1.0;
    double center = 0.0;
    double sigma = 1.0;
};

struct ProfileParams {
    ProfileKind kind = ProfileKind::SmoothedPeakon;
    // gaussian-bump uses the first entry of each list, two-bump the first two.
    std::vector<GaussianBump> u_bumps{{1.0, -3.0, 0.7}, {0.6, 2.0, 0.7}};
    std::vector<GaussianBump> w_bumps{{0.8, -1.0, 0.7}, {1.0, 4.0, 0.7}};
    std::vector<Peakon> a_peakons{{1.0, -3.0}, {0.5, 2.0}};
    std::vector<Peakon> c_peakons{{0.8, -1.0}, {1.0, 4.0}};
    int moll_n = 1;
};

struct InitialData {
    Field u0;
    Field w0;
};

// Nonnegative momentum pair (u0, w0). smoothed-peakon mollifies the peakon
// momentum 2 A_i delta(x - x_i) with rho_n. Throws InvalidArgumentError on
// negative amplitudes, non-positive widths, or wrong list sizes.
InitialData admissible_profiles(const ProfileParams& params, const Grid1D& grid);

// sum_i 2 A_i rho_n(x - x_i), each term discretely normalized to mass 2 A_i.
Field smoothed_peakon_momentum(const std::vector<Peakon>& peakons, MollifierIndex n, const Grid1D& grid);

// (a0, c0) = (lift_initial(u0), lift_initial(w0)) at t = 0.
State initial_state(const InitialData& data);

}  // namespace tricam
