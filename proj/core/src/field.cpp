#include "tricam/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "tricam/errors.hpp"
#include "tricam/spectral.hpp"

namespace tricam {

Field::Field(const Grid1D& grid, double fill) : grid_(grid), values_(grid.n, fill) {}

Field::Field(const Grid1D& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n) {
        throw InvalidArgumentError("field has " + std::to_string(values_.size()) + " values for a grid of " +
                                   std::to_string(grid_.n));
    }
}

bool Field::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }
double Field::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }

double Field::sup_norm() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(*this, o, "operator+=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(*this, o, "operator-=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

Field& Field::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Field a, double s) { return a *= s; }
Field operator*(double s, Field a) { return a *= s; }
Field operator-(Field a) { return a *= -1.0; }

Field product(const Field& a, const Field& b) {
    require_same_grid(a, b, "product");
    Field out(a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

Field transform(const Field& f, const std::function<double(double)>& op) {
    Field out(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(f[i]);
    return out;
}

void require_finite(const Field& f, const char* what) {
    if (!f.all_finite()) throw NonFiniteError(std::string("non-finite values in ") + what);
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (!(a.grid() == b.grid())) throw InvalidArgumentError(std::string("grid mismatch in ") + what);
}

namespace {

Field fd4_first(const Field& f) {
    const std::size_t n = f.size();
    const double inv = 1.0 / (12.0 * f.grid().dx);
    Field out(f.grid());
    for (std::size_t i = 0; i < n; ++i) {
        const double fp1 = f[(i + 1) % n], fp2 = f[(i + 2) % n];
        const double fm1 = f[(i + n - 1) % n], fm2 = f[(i + n - 2) % n];
        out[i] = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) * inv;
    }
    return out;
}

Field fd4_second(const Field& f) {
    const std::size_t n = f.size();
    const double inv = 1.0 / (12.0 * f.grid().dx * f.grid().dx);
    Field out(f.grid());
    for (std::size_t i = 0; i < n; ++i) {
        const double fp1 = f[(i + 1) % n], fp2 = f[(i + 2) % n];
        const double fm1 = f[(i + n - 1) % n], fm2 = f[(i + n - 2) % n];
        out[i] = (-fp2 + 16.0 * fp1 - 30.0 * f[i] + 16.0 * fm1 - fm2) * inv;
    }
    return out;
}

}  // namespace

Field derivative(const Field& f, DerivativeBackend backend) {
    require_finite(f, "derivative");
    if (backend == DerivativeBackend::FiniteDifference4) return fd4_first(f);
    const Grid1D& g = f.grid();
    return spectral::apply_symbol(f, [&](double k, std::size_t m) {
        return spectral::is_nyquist(g, m) ? std::complex<double>(0.0) : std::complex<double>(0.0, k);
    });
}

Field second_derivative(const Field& f, DerivativeBackend backend) {
    require_finite(f, "second_derivative");
    if (backend == DerivativeBackend::FiniteDifference4) return fd4_second(f);
    return spectral::apply_symbol(f, [](double k, std::size_t) { return std::complex<double>(-k * k); });
}

double integrate(const Field& f) {
    require_finite(f, "integrate");
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * f.grid().dx;
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw InvalidArgumentError("invalid exponent: L^p norm needs p >= 1, got " + std::to_string(p));
    require_finite(f, "lp_norm");
    if (std::isinf(p)) return f.sup_norm();
    double s = 0.0;
    if (p == 1.0) {
        for (double v : f.values()) s += std::abs(v);
        return s * f.grid().dx;
    }
    if (p == 2.0) {
        for (double v : f.values()) s += v * v;
        return std::sqrt(s * f.grid().dx);
    }
    for (double v : f.values()) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid().dx, 1.0 / p);
}

double h1_norm(const Field& f) {
    const double l2 = lp_norm(f, 2.0);
    const double d2 = lp_norm(derivative(f), 2.0);
    return std::sqrt(l2 * l2 + d2 * d2);
}

double max_abs_diff(const Field& a, const Field& b) {
    require_same_grid(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace tricam
