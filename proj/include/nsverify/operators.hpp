/// @file operators.hpp
/// @brief Differential and projection operators on periodic grids.
///
/// The spectral backend is exact for trigonometric polynomials below the
/// Nyquist limit. The finite-difference backend uses second-order centered
/// stencils with periodic wrap. Pressure and projection operators are
/// spectral only.
#pragma once

#include <string_view>
#include <variant>

#include "nsverify/fields.hpp"

namespace nsv {

enum class Backend { spectral, finite_difference };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view name);

ScalarField derivative(const ScalarField& s, int axis, Backend backend = Backend::spectral);
VectorField gradient(const ScalarField& s, Backend backend = Backend::spectral);
ScalarField divergence(const VectorField& v, Backend backend = Backend::spectral);
ScalarField laplacian(const ScalarField& s, Backend backend = Backend::spectral);
VectorField laplacian(const VectorField& v, Backend backend = Backend::spectral);

/// Scalar vorticity dv2/dx1 - dv1/dx2 in 2D, the full curl in 3D.
using CurlField = std::variant<ScalarField, VectorField>;
CurlField curl(const VectorField& v, Backend backend = Backend::spectral);
double sup_norm(const CurlField& c);

struct AdvectionOptions {
    /// Zero every mode with |frequency| > N/3 in the velocity, its
    /// derivatives and the product (2/3 rule).
    bool dealias = false;
};

/// g_i = sum_j v_j dv_i/dx_j, evaluated pointwise from backend derivatives.
VectorField advection(const VectorField& v, Backend backend = Backend::spectral, AdvectionOptions options = {});

struct PoissonSolution {
    ScalarField solution;  ///< zero-mean
    double source_mean;    ///< mean removed from the source before inversion
};

/// Solves laplacian(s) = source - mean(source) with mean(s) = 0.
PoissonSolution poisson_solve(const ScalarField& source);

/// p = poisson_solve(rho * div(f - (v . grad) v)) in the zero-mean gauge.
ScalarField pressure_from_fields(const VectorField& v, const VectorField& f, const FluidParams& fluid);

/// Solenoidal part of w: per mode w - k (k . w) / |k|^2, with modes whose
/// first-derivative wavenumber vanishes (k = 0, pure Nyquist) passed through.
VectorField leray_project(const VectorField& w);

/// Curl-free part, gradient(poisson_solve(divergence(w))).
VectorField gradient_part(const VectorField& w);

/// leray_project(advection(v)); only the spectral backend is accepted.
VectorField umbilical_force(const VectorField& v, Backend backend = Backend::spectral);

}  // namespace nsv
