/// @file fields.hpp
/// @brief Periodic grids, grid-sampled fields, fluid parameters, forcing
/// time profiles, and the closed-form solution families.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nsv {

/// Rectilinear periodic sampling lattice in 2 or 3 dimensions.
///
/// Axis 0 is the slowest-varying index of the flattened storage. Sample
/// points are origin + m * spacing for m = 0..N-1; the point origin + period
/// is identified with origin and is not stored.
class Grid {
public:
    Grid(int dim, std::array<int, 3> resolution, std::array<double, 3> period = {2.0, 2.0, 2.0},
         std::array<double, 3> origin = {0.0, 0.0, 0.0});

    /// Same resolution and period on every axis.
    static Grid cube(int dim, int n, double period = 2.0);

    int dim() const { return dim_; }
    int resolution(int axis) const { return resolution_[axis]; }
    double period(int axis) const { return period_[axis]; }
    double origin(int axis) const { return origin_[axis]; }
    double spacing(int axis) const { return period_[axis] / resolution_[axis]; }
    double coordinate(int axis, int m) const { return origin_[axis] + m * spacing(axis); }

    std::size_t size() const;
    double cell_volume() const;  ///< product of the spacings
    double domain_volume() const;

    std::array<int, 3> unravel(std::size_t flat) const;
    std::size_t flatten(const std::array<int, 3>& index) const;
    /// Coordinates of node `flat`; unused trailing entries are zero.
    std::array<double, 3> point(std::size_t flat) const;

    std::string summary() const;

    bool operator==(const Grid& other) const = default;

private:
    int dim_;
    std::array<int, 3> resolution_;
    std::array<double, 3> period_;
    std::array<double, 3> origin_;
};

class ScalarField {
public:
    explicit ScalarField(Grid grid);  ///< zero-initialised
    /// Throws std::invalid_argument on a size mismatch or non-finite sample.
    ScalarField(Grid grid, std::vector<double> samples);

    template <class F>
    static ScalarField from_function(const Grid& grid, F&& f) {
        ScalarField out(grid);
        for (std::size_t i = 0; i < out.size(); ++i) out.data_[i] = f(grid.point(i));
        return out;
    }
    static ScalarField constant(const Grid& grid, double value);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return data_.size(); }
    std::span<const double> values() const { return data_; }
    std::span<double> values() { return data_; }
    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);

private:
    Grid grid_;
    std::vector<double> data_;
};

/// dim-many scalar components on one shared grid.
class VectorField {
public:
    explicit VectorField(const Grid& grid);  ///< zero-initialised
    /// Throws std::invalid_argument unless there are grid.dim() components
    /// that all live on the same grid.
    explicit VectorField(std::vector<ScalarField> components);

    template <class F>
    static VectorField from_function(const Grid& grid, F&& f) {
        VectorField out(grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto value = f(grid.point(i));
            for (int c = 0; c < grid.dim(); ++c) out.components_[c][i] = value[c];
        }
        return out;
    }
    static VectorField constant(const Grid& grid, std::span<const double> value);

    const Grid& grid() const { return components_.front().grid(); }
    int dim() const { return static_cast<int>(components_.size()); }
    const ScalarField& operator[](int c) const { return components_[c]; }
    ScalarField& operator[](int c) { return components_[c]; }

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double s);

private:
    std::vector<ScalarField> components_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

double sup_norm(const ScalarField& s);
/// Maximum over nodes and components of |component|.
double sup_norm(const VectorField& v);
/// Discrete cell L2 norm, sqrt(sum |v|^2 * cell volume).
double l2_norm(const ScalarField& s);
double l2_norm(const VectorField& v);
double mean(const ScalarField& s);

/// Throws std::invalid_argument when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, std::string_view what);

/// Kinematic viscosity and constant density, both strictly positive.
struct FluidParams {
    FluidParams(double kappa, double rho);
    double kappa;
    double rho;
};

/// Scalar forcing amplitude G(t).
///
/// Tabulated profiles interpolate linearly between knots; knots are strictly
/// increasing and start at t = 0.
class TimeProfile {
public:
    struct Zero {};
    struct Constant {
        double value;
    };
    struct Exponential {
        double amplitude;
        double lambda;  ///< G(t) = amplitude * exp(-lambda t), lambda >= 0
    };
    struct Tabulated {
        std::vector<double> times;
        std::vector<double> values;
    };
    using Kind = std::variant<Zero, Constant, Exponential, Tabulated>;

    TimeProfile() = default;
    static TimeProfile zero();
    static TimeProfile constant(double value);
    static TimeProfile exponential(double amplitude, double lambda);
    static TimeProfile tabulated(std::vector<double> times, std::vector<double> values);

    const Kind& kind() const { return kind_; }
    bool is_zero() const { return std::holds_alternative<Zero>(kind_); }

    /// G(t); throws std::out_of_range when a tabulated profile does not cover t.
    double operator()(double t) const;

    /// Integral of G(tau) exp(rate tau) over [0, t]. Closed form for zero,
    /// constant and exponential profiles; adaptive Gauss-Kronrod per knot
    /// interval (1e-12 absolute) for tabulated ones.
    double weighted_integral(double rate, double t) const;

    /// Text form accepted by parse(): zero, const:c, exp:f,lambda, table:t=g;...
    std::string describe() const;
    static TimeProfile parse(std::string_view text);

private:
    explicit TimeProfile(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_ = Zero{};
};

/// 1 + integral_0^t G(tau) exp(decay_rate tau) dtau.
double omega(const TimeProfile& g, double decay_rate, double t);

// ---------------------------------------------------------------------------
// Solution families

enum class FamilyTag { TaylorVortex2D, ForcedTaylorVortex2D, ABCFlow3D, ForcedABCFlow3D, ABCExpForced3D };

inline constexpr std::array<FamilyTag, 5> kAllFamilies = {
    FamilyTag::TaylorVortex2D, FamilyTag::ForcedTaylorVortex2D, FamilyTag::ABCFlow3D,
    FamilyTag::ForcedABCFlow3D, FamilyTag::ABCExpForced3D};

std::string_view to_string(FamilyTag tag);
/// Throws std::invalid_argument on an unknown name.
FamilyTag parse_family_tag(std::string_view name);
int family_dim(FamilyTag tag);

struct AbcCoefficients {
    double a = 1.0;
    double b = 0.5;
    double c = 0.25;
};

struct TaylorVortex2D {};
struct ForcedTaylorVortex2D {
    TimeProfile forcing;
};
struct ABCFlow3D {
    AbcCoefficients abc;
};
struct ForcedABCFlow3D {
    AbcCoefficients abc;
    TimeProfile forcing;
};
/// ABC initial data driven by the uniform force f1 = f_I exp(-lambda t).
struct ABCExpForced3D {
    AbcCoefficients abc;
    double f_i = 1.0;
    double lambda = 1.0;  ///< >= 0
};

using SolutionFamily =
    std::variant<TaylorVortex2D, ForcedTaylorVortex2D, ABCFlow3D, ForcedABCFlow3D, ABCExpForced3D>;

FamilyTag family_tag(const SolutionFamily& family);
int family_dim(const SolutionFamily& family);
std::string describe(const SolutionFamily& family);

/// Velocity amplitude decay rate: 2 pi^2 kappa (2D) or pi^2 kappa (3D).
double decay_rate(FamilyTag tag, const FluidParams& fluid);

/// Time-only factors of a family at one instant. Velocity is
/// amplitude * v0(x) + drift * e1, pressure is rho * amplitude^2 * p0(x).
struct FamilyTimeState {
    double amplitude;
    double amplitude_rate;  ///< d amplitude / dt
    double drift;
    double drift_rate;
    double forcing;         ///< G(t) for the forced families, f_I exp(-lambda t) for ABCExpForced3D
};
FamilyTimeState time_state(const SolutionFamily& family, const FluidParams& fluid, double t);

std::vector<double> eval_initial_velocity(const SolutionFamily& family, std::span<const double> x);
std::vector<double> eval_velocity(const SolutionFamily& family, const FluidParams& fluid,
                                  std::span<const double> x, double t);
/// Analytic partial derivative of the velocity with respect to t.
std::vector<double> eval_velocity_dt(const SolutionFamily& family, const FluidParams& fluid,
                                     std::span<const double> x, double t);
double eval_pressure(const SolutionFamily& family, const FluidParams& fluid, std::span<const double> x,
                     double t);
std::vector<double> eval_force(const SolutionFamily& family, std::span<const double> x, double t);
/// Closed-form (v . grad) v. Throws std::invalid_argument for ABCExpForced3D.
std::vector<double> eval_inertial_closed_form(const SolutionFamily& family, const FluidParams& fluid,
                                              std::span<const double> x, double t);

struct SampledSolution {
    VectorField velocity;
    ScalarField pressure;
    VectorField force;
};

/// Evaluates velocity, pressure and force at every node. The grid must have
/// the family's dimension and period 2 on every axis.
SampledSolution sample(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);
VectorField sample_velocity(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);
VectorField sample_velocity_dt(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                               double t);
VectorField sample_initial_velocity(const SolutionFamily& family, const Grid& grid);
ScalarField sample_pressure(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t);
VectorField sample_force(const SolutionFamily& family, const Grid& grid, double t);
VectorField sample_inertial_closed_form(const SolutionFamily& family, const FluidParams& fluid,
                                        const Grid& grid, double t);

}  // namespace nsv
