#include "nsverify/spectral.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nsv {

namespace {

// the FFTW planner is not re-entrant
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

int signed_frequency(int m, int n) { return m <= n / 2 ? m : m - n; }

}  // namespace

SpectralWorkspace::SpectralWorkspace(const Grid& grid) : grid_(grid) {
    const int dim = grid.dim();
    for (int axis = 0; axis < dim; ++axis)
        if (grid.resolution(axis) % 2 != 0)
            throw std::invalid_argument("spectral operators require even resolution on every axis");

    std::array<int, 3> shape{1, 1, 1};
    for (int axis = 0; axis < dim; ++axis) shape[axis] = grid.resolution(axis);
    std::array<int, 3> half = shape;
    half[dim - 1] = shape[dim - 1] / 2 + 1;
    modes_ = 1;
    for (int axis = 0; axis < dim; ++axis) modes_ *= static_cast<std::size_t>(half[axis]);

    kd_.assign(modes_ * 3, 0.0);
    k2_.assign(modes_, 0.0);
    freq_.assign(modes_ * 3, 0);
    for (std::size_t mode = 0; mode < modes_; ++mode) {
        std::size_t rest = mode;
        for (int axis = dim - 1; axis >= 0; --axis) {
            const int m = static_cast<int>(rest % half[axis]);
            rest /= half[axis];
            const int n = shape[axis];
            const int f = signed_frequency(m, n);
            const double k = 2.0 * std::numbers::pi * f / grid.period(axis);
            freq_[mode * 3 + axis] = f;
            kd_[mode * 3 + axis] = (2 * m == n) ? 0.0 : k;
            k2_[mode] += k * k;
        }
    }

    real_buf_ = fftw_alloc_real(grid.size());
    complex_buf_ = fftw_alloc_complex(modes_);
    std::lock_guard lock(planner_mutex());
    forward_plan_ = fftw_plan_dft_r2c(dim, shape.data(), real_buf_, complex_buf_, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r(dim, shape.data(), complex_buf_, real_buf_, FFTW_ESTIMATE);
    if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("FFTW planning failed");
}

SpectralWorkspace::~SpectralWorkspace() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_plan_);
    fftw_destroy_plan(inverse_plan_);
    fftw_free(real_buf_);
    fftw_free(complex_buf_);
}

Spectrum SpectralWorkspace::forward(std::span<const double> samples) {
    if (samples.size() != grid_.size()) throw std::invalid_argument("forward transform: wrong sample count");
    std::memcpy(real_buf_, samples.data(), samples.size() * sizeof(double));
    fftw_execute(forward_plan_);
    Spectrum out(modes_);
    std::memcpy(static_cast<void*>(out.data()), complex_buf_, modes_ * sizeof(fftw_complex));
    return out;
}

std::vector<double> SpectralWorkspace::inverse(std::span<const std::complex<double>> spectrum) {
    if (spectrum.size() != modes_) throw std::invalid_argument("inverse transform: wrong mode count");
    std::memcpy(complex_buf_, static_cast<const void*>(spectrum.data()), modes_ * sizeof(fftw_complex));
    fftw_execute(inverse_plan_);
    const double scale = 1.0 / static_cast<double>(grid_.size());
    std::vector<double> out(real_buf_, real_buf_ + grid_.size());
    for (auto& v : out) v *= scale;
    return out;
}

double SpectralWorkspace::derivative_k_squared(std::size_t mode) const {
    double s = 0.0;
    for (int axis = 0; axis < grid_.dim(); ++axis) s += kd_[mode * 3 + axis] * kd_[mode * 3 + axis];
    return s;
}

bool SpectralWorkspace::outside_band(std::size_t mode, double fraction) const {
    for (int axis = 0; axis < grid_.dim(); ++axis)
        if (std::abs(freq_[mode * 3 + axis]) > fraction * grid_.resolution(axis)) return true;
    return false;
}

std::vector<double> SpectralWorkspace::wavenumbers(int axis) const {
    const int n = grid_.resolution(axis);
    std::vector<double> k(n);
    for (int m = 0; m < n; ++m) k[m] = 2.0 * std::numbers::pi * signed_frequency(m, n) / grid_.period(axis);
    return k;
}

SpectralWorkspace& workspace_for(const Grid& grid) {
    thread_local std::vector<std::unique_ptr<SpectralWorkspace>> cache;
    for (auto& ws : cache)
        if (ws->grid() == grid) return *ws;
    cache.push_back(std::make_unique<SpectralWorkspace>(grid));
    return *cache.back();
}

}  // namespace nsv
