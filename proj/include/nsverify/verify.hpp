/// @file verify.hpp
/// @brief Residual and claims harness for the closed-form solution families.
///
/// All spatial derivatives use the spectral backend; time derivatives come
/// from the families' analytic amplitude laws.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsverify/evolution.hpp"
#include "nsverify/fields.hpp"
#include "nsverify/operators.hpp"
#include "nsverify/solutions.hpp"

namespace nsv {

struct Tolerances {
    double momentum = 1e-8;
    double divergence = 1e-10;
    double umbilical = 1e-10;
    double ppe = 1e-9;
    double inertial = 1e-10;
    double energy_relative = 1e-10;
    double initial = 1e-15;
    /// agreement between measured residuals and the symbolic prediction
    double prediction = 1e-8;
};

struct ResidualOptions {
    /// Multiplies the sampled velocity and its time derivative; 1.01 is the
    /// mutation self-test.
    double velocity_scale = 1.0;
};

/// dv/dt + (v . grad) v + grad(p)/rho - kappa lap(v) - f.
VectorField momentum_residual(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t,
                              ResidualOptions options = {});
ScalarField divergence_residual(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);
/// Sup-difference between the velocity at t = 0 and the v0 formula.
double initial_condition_check(const SolutionFamily& family, const Grid& grid);
/// Integral of |v|^2 over one periodic cell (trapezoidal, exact for the
/// families' trigonometric fields).
double cell_energy(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);
std::vector<std::pair<double, double>> umbilical_audit(const SolutionFamily& family, const FluidParams& fluid,
                                                       const Grid& grid, const std::vector<double>& times);
/// Sup-difference between the pressure reconstructed from (v, f) and the
/// closed form, both in the zero-mean gauge.
double ppe_consistency(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);
/// Evolution problem of a family: v0 from the family, its force bound as the
/// force source, except that spatially uniform forces (ABCExpForced3D) are
/// routed to the closed-form drift term.
EvolutionSpec family_evolution(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                               TimeQuadrature quadrature = {});
/// Sup-difference between duhamel_evolve and the closed-form velocity at t
/// using `panels` Simpson panels on [0, t].
double evolve_vs_closed_form(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t,
                             int panels);
/// ||curl((v . grad) v)||_inf; zero exactly when the inertial term is a gradient.
double inertial_curl_sup(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);
/// Least-squares rate of log ||v(t)||_inf over the given times.
double fitted_decay_rate(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                         const std::vector<double>& times);

/// Symbolic expansion for ABCExpForced3D: with v = w + h(t) e1 and w the
/// decaying ABC field, the only unbalanced term of the momentum equation is
/// h(t) dw/dx1 = pi b h(t) exp(-pi^2 kappa t) (0, cos pi x1, sin pi x1).
/// It is divergence-free, so it is also the predicted umbilical force.
/// Returns the zero field for every other family.
VectorField predicted_residual(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);

// ---------------------------------------------------------------------------
// Convergence studies

enum class ConvergenceKind { fd_gradient, fd_laplacian, spectral_gradient, spectral_laplacian, duhamel_panels };

std::string_view to_string(ConvergenceKind kind);
/// Accepts the operator name and backend, e.g. ("laplacian", fd).
ConvergenceKind convergence_kind(std::string_view op, Backend backend);

/// Test field for the operator studies: sin(mode * pi * x1) on a dim-D grid.
/// The Duhamel study uses the forced Taylor vortex with G(t) = forcing.
struct FieldSpec {
    int dim = 2;
    int mode = 1;
    double kappa = 0.02;
    double horizon = 1.0;   ///< Duhamel evaluation time
    double forcing = 1.0;   ///< constant G for the Duhamel study
    int duhamel_grid = 16;  ///< grid resolution of the Duhamel study
};

struct ConvergencePoint {
    int n;  ///< grid resolution, or Simpson panel count
    double error;
};

struct ConvergenceStudy {
    ConvergenceKind kind;
    std::vector<ConvergencePoint> points;
    double fitted_order;  ///< least-squares slope of log(error) against log(1/n)
};

/// Throws std::invalid_argument with fewer than three resolutions.
ConvergenceStudy convergence_study(ConvergenceKind kind, const FieldSpec& spec, const std::vector<int>& resolutions);
double fitted_order(const std::vector<ConvergencePoint>& points);

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { pass, fail, measured_contradicts_paper };
std::string_view to_string(Verdict verdict);

struct TimeNorms {
    double t;
    double momentum_sup;
    double momentum_l2;
    double divergence_sup;
    double umbilical_sup;
    double ppe_pressure_sup_err;
    std::optional<double> inertial_closed_form_sup_err;
    double inertial_curl_sup;
};

struct ClaimVerdict {
    Claim claim;
    ClaimStatus status;
    Verdict verdict;
    double measured;   ///< worst value over the sampled times
    double tolerance;
};

/// Measured residuals against the symbolic prediction (ABCExpForced3D).
struct PredictionCheck {
    std::vector<double> times;
    std::vector<double> umbilical_predicted;
    std::vector<double> momentum_predicted;
    double max_umbilical_mismatch;  ///< sup over nodes and times of |measured - predicted|
    double max_momentum_mismatch;
    bool agrees;
};

struct ResidualReport {
    FamilyTag tag;
    std::string family;   ///< describe(family)
    std::string grid;     ///< Grid::summary()
    double kappa;
    double rho;
    std::vector<double> times;
    std::vector<TimeNorms> norms;
    double initial_condition_err;
    std::vector<std::pair<double, double>> energy_series;
    std::vector<ClaimVerdict> verdicts;
    std::optional<PredictionCheck> prediction;
    Tolerances tolerances;
    std::vector<std::string> notes;
};

struct VerifyOptions {
    Tolerances tolerances{};
    ResidualOptions residual{};
};

ResidualReport verify_family(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                             const std::vector<double>& times, const VerifyOptions& options = {});

/// 0 when every expected-pass claim holds, 2 on any tolerance failure,
/// 3 when only audit-required claims are contradicted by measurement.
int exit_code(const std::vector<ResidualReport>& reports);

}  // namespace nsv
