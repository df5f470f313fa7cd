/// @file evolution.hpp
/// @brief Heat-kernel propagation, the Duhamel solution operator with
/// projected forcing and time-only drift, and free-space quadrature oracles.
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "nsverify/fields.hpp"

namespace nsv {

/// Composite Simpson rule on [0, t]. One panel spans two subintervals.
struct TimeQuadrature {
    int panels = 0;                 ///< total panels; 0 selects panels_per_unit_time
    int panels_per_unit_time = 64;

    int panels_for(double t) const;
};

/// Force sampled at strictly increasing timestamps, linear in time between them.
struct TabulatedForce {
    std::vector<double> times;
    std::vector<VectorField> fields;
};

/// No force, a sampled history, or the force of a solution family.
using ForceSource = std::variant<std::monostate, TabulatedForce, SolutionFamily>;

class EvolutionSpec {
public:
    /// Throws std::invalid_argument when the initial field is not
    /// divergence-free to 1e-8, when tabulated force timestamps are not
    /// strictly increasing or live on another grid, or when the drift does not
    /// have one profile per component.
    EvolutionSpec(FluidParams fluid, VectorField initial, ForceSource force = {},
                  std::optional<std::vector<TimeProfile>> drift = std::nullopt, TimeQuadrature quadrature = {});

    const FluidParams& fluid() const { return fluid_; }
    const VectorField& initial() const { return initial_; }
    const ForceSource& force() const { return force_; }
    const std::optional<std::vector<TimeProfile>>& drift() const { return drift_; }
    const TimeQuadrature& quadrature() const { return quadrature_; }
    bool has_force() const { return !std::holds_alternative<std::monostate>(force_); }

    /// Force at time t; throws std::out_of_range outside a tabulated horizon.
    VectorField force_at(double t) const;

private:
    FluidParams fluid_;
    VectorField initial_;
    ForceSource force_;
    std::optional<std::vector<TimeProfile>> drift_;
    TimeQuadrature quadrature_;
};

/// Per-mode multiplication by exp(-kappa |k|^2 t).
VectorField heat_propagate(const VectorField& v0, const FluidParams& fluid, double t);

/// Solenoidal part of the force; leaves divergence-free forces unchanged.
VectorField project_force(const VectorField& f);

/// heat_propagate(v0, t) + int_0^t heat_propagate(project_force(f(tau)), t - tau) dtau
///   + int_0^t drift(tau) dtau.
/// The force integral uses composite Simpson; drift integrals are closed form.
VectorField duhamel_evolve(const EvolutionSpec& spec, double t);

struct OracleConfig {
    double truncation_radius = 6.0;      ///< oracle reach, in periods (>= 2)
    int quadrature_points_per_axis = 64; ///< Gauss-Legendre nodes per period (>= 16, multiple of 8)

    void validate() const;
};

/// Direct quadrature of the free-space Gaussian convolution of the
/// periodically extended v0 over a box of half-width truncation_radius
/// periods centered on each node. t must be > 0.
VectorField free_space_oracle_heat(const VectorField& v0, const FluidParams& fluid, double t,
                                   const OracleConfig& cfg = {});

/// grad(p)/rho from the free-space Newtonian-potential kernel
/// Gamma(n/2)/(2 pi^(n/2)) (x - y) / |x - y|^n applied to P = -div(g - f),
/// over the ball of radius truncation_radius periods, with a smooth taper on
/// its outer half. The cells touching the evaluation point are integrated in
/// singularity-removing coordinates with 8x refined nodes. Both oracles need
/// at least 10 nodes per axis.
VectorField free_space_oracle_pressure_gradient(const VectorField& g_minus_f, const OracleConfig& cfg = {});

}  // namespace nsv
