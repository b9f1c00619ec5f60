#include "cell_rule.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tricam/errors.hpp"

namespace tricam::detail {

CellStencil make_cell_stencil(int points) {
    if (points < 2 || points > 12 || points % 2 != 0) {
        throw InvalidArgumentError("stencil points must be even and in [2, 12], got " + std::to_string(points));
    }
    CellStencil st;
    st.half = points / 2;
    st.basis.assign(points, std::vector<long double>(points, 0.0L));
    for (int a = 0; a < points; ++a) {
        const long double sa = st.first() + a;
        std::vector<long double> poly{1.0L};
        long double denom = 1.0L;
        for (int b = 0; b < points; ++b) {
            if (b == a) continue;
            const long double sb = st.first() + b;
            std::vector<long double> next(poly.size() + 1, 0.0L);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= sb * poly[k];
            }
            poly = std::move(next);
            denom *= (sa - sb);
        }
        for (int k = 0; k < points; ++k) st.basis[a][k] = poly[k] / denom;
    }
    return st;
}

long double eval_basis(const CellStencil& st, int j, long double s) noexcept {
    const auto& c = st.basis[j];
    long double v = 0.0L;
    for (std::size_t k = c.size(); k-- > 0;) v = v * s + c[k];
    return v;
}

GaussRule gauss_legendre_unit(int order) {
    GaussRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (order + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        r.nodes[i] = static_cast<double>(0.5L * (1.0L - x));
        r.weights[i] = static_cast<double>(1.0L / ((1.0L - x * x) * dp * dp));
    }
    return r;
}

}  // namespace tricam::detail
