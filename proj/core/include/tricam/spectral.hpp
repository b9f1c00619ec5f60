#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tricam/field.hpp"

namespace tricam::spectral {

using Spectrum = std::vector<std::complex<double>>;

// Real-to-half-complex forward transform, unnormalized (n/2+1 modes).
Spectrum forward(const Field& f);
// Inverse of forward(), including the 1/n normalization.
Field inverse(const Spectrum& s, const Grid1D& grid);

// Angular wavenumber of half-spectrum mode m: 2*pi*m/length.
double wavenumber(const Grid1D& grid, std::size_t m) noexcept;
// True for the unpaired Nyquist mode of an even-length grid.
bool is_nyquist(const Grid1D& grid, std::size_t m) noexcept;

// Multiply each mode by symbol(k, m) and transform back.
template <class Symbol>
Field apply_symbol(const Field& f, Symbol&& symbol) {
    Spectrum s = forward(f);
    const Grid1D& g = f.grid();
    for (std::size_t m = 0; m < s.size(); ++m) s[m] *= symbol(wavenumber(g, m), m);
    return inverse(s, g);
}

// 2/3-rule mask: keeps modes with m <= n/3.
bool inside_two_thirds(const Grid1D& grid, std::size_t m) noexcept;

}  // namespace tricam::spectral
