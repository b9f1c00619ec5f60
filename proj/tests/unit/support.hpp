#pragma once

#include <cmath>
#include <random>

#include "tricam/field.hpp"
#include "tricam/initdata.hpp"

namespace tricam::testing {

// Sum of a few Gaussians with random signs, centres and widths in [0.6, 2].
inline Field random_smooth_field(const Grid1D& g, std::mt19937_64& rng, bool nonnegative = false) {
    std::uniform_real_distribution<double> amp(nonnegative ? 0.1 : -1.0, 1.0), ctr(-8.0, 8.0), wid(0.6, 2.0);
    double A[4], C[4], S[4];
    for (int j = 0; j < 4; ++j) {
        A[j] = amp(rng);
        C[j] = ctr(rng);
        S[j] = wid(rng);
    }
    return Field::sample(g, [&](double x) {
        double v = 0.0;
        for (int j = 0; j < 4; ++j) v += A[j] * std::exp(-0.5 * (x - C[j]) * (x - C[j]) / (S[j] * S[j]));
        return v;
    });
}

// a = G1 * (2 A rho_n(. - x0)): the smoothed single peakon.
inline Field smoothed_peakon(const Grid1D& g, double amplitude = 1.0, double position = 0.0, int n = 1) {
    return lift_initial(smoothed_peakon_momentum({{amplitude, position}}, MollifierIndex(n), g));
}

inline double rel_sup(const Field& got, const Field& want) {
    return max_abs_diff(got, want) / std::max(1e-300, want.sup_norm());
}

}  // namespace tricam::testing
