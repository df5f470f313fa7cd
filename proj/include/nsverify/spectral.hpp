/// @file spectral.hpp
/// @brief FFTW-backed real-to-complex transforms and wavenumber tables for a
/// periodic grid.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include <fftw3.h>

#include "nsverify/fields.hpp"

namespace nsv {

using Spectrum = std::vector<std::complex<double>>;

/// Transform plans, buffers and per-mode wavenumbers for one grid.
///
/// Mode storage is the FFTW r2c half-spectrum: the last axis keeps indices
/// 0..N/2. Signed frequencies are m for m < N/2 and m - N for m > N/2; the
/// Nyquist mode m = N/2 keeps k = pi N / L for second derivatives and has its
/// first-derivative wavenumber set to zero.
///
/// A workspace may be reused by one thread at a time. Plans are built with
/// FFTW_ESTIMATE so the summation order is fixed for a given N.
class SpectralWorkspace {
public:
    explicit SpectralWorkspace(const Grid& grid);
    ~SpectralWorkspace();
    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    const Grid& grid() const { return grid_; }
    std::size_t modes() const { return modes_; }

    Spectrum forward(std::span<const double> samples);
    /// Normalised inverse; the input spectrum is left untouched.
    std::vector<double> inverse(std::span<const std::complex<double>> spectrum);

    /// First-derivative wavenumber of `mode` along `axis` (Nyquist zeroed).
    double derivative_k(std::size_t mode, int axis) const { return kd_[mode * 3 + axis]; }
    /// |k|^2 of `mode`, Nyquist frequencies included.
    double k_squared(std::size_t mode) const { return k2_[mode]; }
    /// Sum of squared first-derivative wavenumbers.
    double derivative_k_squared(std::size_t mode) const;
    /// True when |signed frequency| > fraction * N on any axis (2/3-rule filter).
    bool outside_band(std::size_t mode, double fraction) const;

    /// Signed wavenumber table 2 pi m~ / L for one axis, length N.
    std::vector<double> wavenumbers(int axis) const;

private:
    Grid grid_;
    std::size_t modes_;
    std::vector<double> kd_;
    std::vector<double> k2_;
    std::vector<int> freq_;  // signed frequency index per mode and axis
    double* real_buf_;
    fftw_complex* complex_buf_;
    fftw_plan forward_plan_;
    fftw_plan inverse_plan_;
};

/// Per-thread cached workspace for `grid`.
SpectralWorkspace& workspace_for(const Grid& grid);

}  // namespace nsv
