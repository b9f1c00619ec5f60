#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "tricam/grid.hpp"

namespace tricam {

// Samples of one real scalar function on a Grid1D. Immutable in spirit: the
// public operations return new fields; mutation is limited to construction
// helpers and the in-place arithmetic operators.
class Field {
public:
    Field() = default;
    explicit Field(const Grid1D& grid, double fill = 0.0);
    Field(const Grid1D& grid, std::vector<double> values);

    template <class Fn>
    static Field sample(const Grid1D& grid, Fn&& fn) {
        std::vector<double> v(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) v[i] = fn(grid.x(i));
        return Field(grid, std::move(v));
    }

    const Grid1D& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    bool all_finite() const noexcept;
    double max() const noexcept;
    double min() const noexcept;
    double sup_norm() const noexcept;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s) noexcept;

private:
    Grid1D grid_{};
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Field a, double s);
Field operator*(double s, Field a);
Field operator-(Field a);
// Pointwise product.
Field product(const Field& a, const Field& b);
// Apply a pointwise map.
Field transform(const Field& f, const std::function<double(double)>& op);

// Throws NonFiniteError naming `what` if any sample is NaN/Inf.
void require_finite(const Field& f, const char* what);
// Throws InvalidArgumentError if the grids differ.
void require_same_grid(const Field& a, const Field& b, const char* what);

enum class DerivativeBackend {
    Spectral,          // Fourier differentiation (periodic grids)
    FiniteDifference4  // 4th-order central differences with periodic wrap
};

// d/dx. Spectral by default; the Nyquist mode is dropped for odd orders.
Field derivative(const Field& f, DerivativeBackend backend = DerivativeBackend::Spectral);
// d^2/dx^2 (spectral keeps the Nyquist mode, symbol -k^2).
Field second_derivative(const Field& f, DerivativeBackend backend = DerivativeBackend::Spectral);

// Periodic Riemann sum, dx * sum f_i.
double integrate(const Field& f);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Discrete L^p norm; p = kInfinity gives max |f|. Throws for p < 1.
double lp_norm(const Field& f, double p);

// (||f||_2^2 + ||f_x||_2^2)^{1/2} with the spectral derivative.
double h1_norm(const Field& f);

// Max |a - b| over nodes.
double max_abs_diff(const Field& a, const Field& b);

}  // namespace tricam
