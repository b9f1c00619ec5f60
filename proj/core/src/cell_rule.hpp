#pragma once

// The nodal quadrature rule shared by the recursive scan and the oracle: on
// each cell [x_c, x_c + h] the integrand's smooth factor is replaced by the
// Lagrange interpolant through nodes x_c + j*h, j = 1-m .. m.

#include <array>
#include <cstddef>
#include <vector>

namespace tricam::detail {

struct CellStencil {
    int half = 4;  // m
    // Stencil offsets j = 1-m .. m relative to the cell's left node.
    int first() const noexcept { return 1 - half; }
    int points() const noexcept { return 2 * half; }
    // Monomial coefficients of each Lagrange basis polynomial in s = (y - x_c)/h:
    // basis[j][k] multiplies s^k.
    std::vector<std::vector<long double>> basis;
};

// Throws InvalidArgumentError unless points is even and in [2, 12].
CellStencil make_cell_stencil(int points);

// Value of the j-th Lagrange basis polynomial at s.
long double eval_basis(const CellStencil& st, int j, long double s) noexcept;

// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre_unit(int order);

}  // namespace tricam::detail
