#include "tricam/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace tricam::spectral {
namespace {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
public:
    explicit Plan(std::size_t n) : n_(n) {
        std::lock_guard lock(planner_mutex());
        real_ = fftw_alloc_real(n);
        cplx_ = fftw_alloc_complex(n / 2 + 1);
        const int ni = static_cast<int>(n);
        fwd_ = fftw_plan_dft_r2c_1d(ni, real_, cplx_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(ni, cplx_, real_, FFTW_ESTIMATE);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(real_);
        fftw_free(cplx_);
    }

    void forward(std::span<const double> in, Spectrum& out) {
        std::memcpy(real_, in.data(), n_ * sizeof(double));
        fftw_execute(fwd_);
        out.resize(n_ / 2 + 1);
        std::memcpy(static_cast<void*>(out.data()), cplx_, out.size() * sizeof(fftw_complex));
    }

    void inverse(const Spectrum& in, std::span<double> out) {
        std::memcpy(cplx_, static_cast<const void*>(in.data()), in.size() * sizeof(fftw_complex));
        fftw_execute(bwd_);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = real_[i] * scale;
    }

private:
    std::size_t n_;
    double* real_ = nullptr;
    fftw_complex* cplx_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

Plan& plan_for(std::size_t n) {
    thread_local std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Plan>(n);
    return *slot;
}

}  // namespace

Spectrum forward(const Field& f) {
    Spectrum s;
    plan_for(f.size()).forward(f.values(), s);
    return s;
}

Field inverse(const Spectrum& s, const Grid1D& grid) {
    Field out(grid);
    plan_for(grid.n).inverse(s, out.values());
    return out;
}

double wavenumber(const Grid1D& grid, std::size_t m) noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(m) / grid.length();
}

bool is_nyquist(const Grid1D& grid, std::size_t m) noexcept {
    return grid.n % 2 == 0 && m == grid.n / 2;
}

bool inside_two_thirds(const Grid1D& grid, std::size_t m) noexcept {
    return 3 * m <= grid.n;
}

}  // namespace tricam::spectral
