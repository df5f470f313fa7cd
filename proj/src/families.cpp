#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nsverify/fields.hpp"
#include "nsverify/text.hpp"

namespace nsv {

namespace {

constexpr double pi = std::numbers::pi;

using Point = std::array<double, 3>;

// Unit-amplitude spatial shapes. Pressure shapes carry the sign that makes
// grad(p0) = -(v0 . grad) v0, so that rho * amplitude^2 * p0 balances the
// inertial term in the momentum equation.
std::array<double, 3> taylor_v0(const Point& x) {
    return {std::sin(pi * x[0]) * std::cos(pi * x[1]), -std::cos(pi * x[0]) * std::sin(pi * x[1]), 0.0};
}

double taylor_p0(const Point& x) { return 0.25 * (std::cos(2.0 * pi * x[0]) + std::cos(2.0 * pi * x[1])); }

std::array<double, 3> taylor_g0(const Point& x) {
    return {0.5 * pi * std::sin(2.0 * pi * x[0]), 0.5 * pi * std::sin(2.0 * pi * x[1]), 0.0};
}

std::array<double, 3> abc_v0(const AbcCoefficients& k, const Point& x) {
    return {k.a * std::sin(pi * x[2]) - k.c * std::cos(pi * x[1]),
            k.b * std::sin(pi * x[0]) - k.a * std::cos(pi * x[2]),
            k.c * std::sin(pi * x[1]) - k.b * std::cos(pi * x[0])};
}

double abc_p0(const AbcCoefficients& k, const Point& x) {
    return k.b * k.c * std::cos(pi * x[0]) * std::sin(pi * x[1]) +
           k.a * k.b * std::cos(pi * x[2]) * std::sin(pi * x[0]) +
           k.a * k.c * std::cos(pi * x[1]) * std::sin(pi * x[2]);
}

std::array<double, 3> abc_g0(const AbcCoefficients& k, const Point& x) {
    const double s0 = std::sin(pi * x[0]), s1 = std::sin(pi * x[1]), s2 = std::sin(pi * x[2]);
    const double c0 = std::cos(pi * x[0]), c1 = std::cos(pi * x[1]), c2 = std::cos(pi * x[2]);
    return {pi * (k.b * k.c * s0 * s1 - k.a * k.b * c0 * c2),
            pi * (k.a * k.c * s1 * s2 - k.b * k.c * c0 * c1),
            pi * (k.a * k.b * s0 * s2 - k.a * k.c * c1 * c2)};
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const AbcCoefficients* abc_of(const SolutionFamily& family) {
    return std::visit(overloaded{[](const ABCFlow3D& f) -> const AbcCoefficients* { return &f.abc; },
                                 [](const ForcedABCFlow3D& f) -> const AbcCoefficients* { return &f.abc; },
                                 [](const ABCExpForced3D& f) -> const AbcCoefficients* { return &f.abc; },
                                 [](const auto&) -> const AbcCoefficients* { return nullptr; }},
                      family);
}

std::array<double, 3> shape_v0(const SolutionFamily& family, const Point& x) {
    if (const auto* abc = abc_of(family)) return abc_v0(*abc, x);
    return taylor_v0(x);
}

double shape_p0(const SolutionFamily& family, const Point& x) {
    if (const auto* abc = abc_of(family)) return abc_p0(*abc, x);
    return taylor_p0(x);
}

std::array<double, 3> shape_g0(const SolutionFamily& family, const Point& x) {
    if (const auto* abc = abc_of(family)) return abc_g0(*abc, x);
    return taylor_g0(x);
}

Point checked_point(const SolutionFamily& family, std::span<const double> x) {
    const int dim = family_dim(family);
    if (static_cast<int>(x.size()) != dim)
        throw std::invalid_argument("point has " + std::to_string(x.size()) + " coordinates, family " +
                                    std::string(to_string(family_tag(family))) + " needs " + std::to_string(dim));
    Point p{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) p[i] = x[i];
    return p;
}

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and non-negative");
}

void check_grid(const SolutionFamily& family, const Grid& grid) {
    if (grid.dim() != family_dim(family))
        throw std::invalid_argument("grid dimension does not match family " +
                                    std::string(to_string(family_tag(family))));
    for (int axis = 0; axis < grid.dim(); ++axis)
        if (grid.period(axis) != 2.0)
            throw std::invalid_argument("solution families are 2-periodic; grid period must be 2 on every axis");
}

std::vector<double> truncate(const std::array<double, 3>& v, int dim) { return {v.begin(), v.begin() + dim}; }

}  // namespace

std::string_view to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::TaylorVortex2D: return "TaylorVortex2D";
        case FamilyTag::ForcedTaylorVortex2D: return "ForcedTaylorVortex2D";
        case FamilyTag::ABCFlow3D: return "ABCFlow3D";
        case FamilyTag::ForcedABCFlow3D: return "ForcedABCFlow3D";
        case FamilyTag::ABCExpForced3D: return "ABCExpForced3D";
    }
    return "unknown";
}

FamilyTag parse_family_tag(std::string_view name) {
    for (FamilyTag tag : kAllFamilies)
        if (to_string(tag) == name) return tag;
    throw std::invalid_argument("unknown solution family '" + std::string(name) + "'");
}

int family_dim(FamilyTag tag) {
    return (tag == FamilyTag::TaylorVortex2D || tag == FamilyTag::ForcedTaylorVortex2D) ? 2 : 3;
}

FamilyTag family_tag(const SolutionFamily& family) {
    return std::visit(overloaded{[](const TaylorVortex2D&) { return FamilyTag::TaylorVortex2D; },
                                 [](const ForcedTaylorVortex2D&) { return FamilyTag::ForcedTaylorVortex2D; },
                                 [](const ABCFlow3D&) { return FamilyTag::ABCFlow3D; },
                                 [](const ForcedABCFlow3D&) { return FamilyTag::ForcedABCFlow3D; },
                                 [](const ABCExpForced3D&) { return FamilyTag::ABCExpForced3D; }},
                      family);
}

int family_dim(const SolutionFamily& family) { return family_dim(family_tag(family)); }

std::string describe(const SolutionFamily& family) {
    auto abc_text = [](const AbcCoefficients& k) {
        return "a=" + format_shortest(k.a) + ",b=" + format_shortest(k.b) + ",c=" + format_shortest(k.c);
    };
    return std::visit(
        overloaded{[](const TaylorVortex2D&) { return std::string("TaylorVortex2D"); },
                   [](const ForcedTaylorVortex2D& f) { return "ForcedTaylorVortex2D(G=" + f.forcing.describe() + ")"; },
                   [&](const ABCFlow3D& f) { return "ABCFlow3D(" + abc_text(f.abc) + ")"; },
                   [&](const ForcedABCFlow3D& f) {
                       return "ForcedABCFlow3D(" + abc_text(f.abc) + ",G=" + f.forcing.describe() + ")";
                   },
                   [&](const ABCExpForced3D& f) {
                       return "ABCExpForced3D(" + abc_text(f.abc) + ",f_I=" + format_shortest(f.f_i) +
                              ",lambda=" + format_shortest(f.lambda) + ")";
                   }},
        family);
}

double decay_rate(FamilyTag tag, const FluidParams& fluid) {
    return (family_dim(tag) == 2 ? 2.0 * pi * pi : pi * pi) * fluid.kappa;
}

FamilyTimeState time_state(const SolutionFamily& family, const FluidParams& fluid, double t) {
    check_time(t);
    const double r = decay_rate(family_tag(family), fluid);
    const double decay = std::exp(-r * t);
    auto forced = [&](const TimeProfile& g) {
        const double amp = omega(g, r, t) * decay;
        const double gt = g(t);
        return FamilyTimeState{amp, gt - r * amp, 0.0, 0.0, gt};
    };
    return std::visit(overloaded{[&](const ForcedTaylorVortex2D& f) { return forced(f.forcing); },
                                 [&](const ForcedABCFlow3D& f) { return forced(f.forcing); },
                                 [&](const ABCExpForced3D& f) {
                                     if (f.lambda < 0.0)
                                         throw std::invalid_argument("ABCExpForced3D requires lambda >= 0");
                                     const double drift =
                                         f.lambda == 0.0 ? f.f_i * t : -f.f_i * std::expm1(-f.lambda * t) / f.lambda;
                                     const double force = f.f_i * std::exp(-f.lambda * t);
                                     return FamilyTimeState{decay, -r * decay, drift, force, force};
                                 },
                                 [&](const auto&) { return FamilyTimeState{decay, -r * decay, 0.0, 0.0, 0.0}; }},
                      family);
}

namespace {

std::array<double, 3> velocity_at(const SolutionFamily& family, const FamilyTimeState& s, const Point& x) {
    auto v = shape_v0(family, x);
    for (auto& c : v) c *= s.amplitude;
    v[0] += s.drift;
    return v;
}

std::array<double, 3> velocity_dt_at(const SolutionFamily& family, const FamilyTimeState& s, const Point& x) {
    auto v = shape_v0(family, x);
    for (auto& c : v) c *= s.amplitude_rate;
    v[0] += s.drift_rate;
    return v;
}

double pressure_at(const SolutionFamily& family, const FluidParams& fluid, const FamilyTimeState& s,
                   const Point& x) {
    return fluid.rho * s.amplitude * s.amplitude * shape_p0(family, x);
}

std::array<double, 3> force_at(const SolutionFamily& family, const FamilyTimeState& s, const Point& x) {
    switch (family_tag(family)) {
        case FamilyTag::ForcedTaylorVortex2D:
        case FamilyTag::ForcedABCFlow3D: {
            auto f = shape_v0(family, x);
            for (auto& c : f) c *= s.forcing;
            return f;
        }
        case FamilyTag::ABCExpForced3D: return {s.forcing, 0.0, 0.0};
        default: return {0.0, 0.0, 0.0};
    }
}

std::array<double, 3> inertial_at(const SolutionFamily& family, const FamilyTimeState& s, const Point& x) {
    auto g = shape_g0(family, x);
    for (auto& c : g) c *= s.amplitude * s.amplitude;
    return g;
}

void require_closed_inertial(const SolutionFamily& family) {
    if (family_tag(family) == FamilyTag::ABCExpForced3D)
        throw std::invalid_argument("no closed-form inertial term is available for ABCExpForced3D");
}

FluidParams unit_fluid() { return FluidParams(1.0, 1.0); }

}  // namespace

std::vector<double> eval_initial_velocity(const SolutionFamily& family, std::span<const double> x) {
    return truncate(shape_v0(family, checked_point(family, x)), family_dim(family));
}

std::vector<double> eval_velocity(const SolutionFamily& family, const FluidParams& fluid, std::span<const double> x,
                                  double t) {
    const auto p = checked_point(family, x);
    return truncate(velocity_at(family, time_state(family, fluid, t), p), family_dim(family));
}

std::vector<double> eval_velocity_dt(const SolutionFamily& family, const FluidParams& fluid,
                                     std::span<const double> x, double t) {
    const auto p = checked_point(family, x);
    return truncate(velocity_dt_at(family, time_state(family, fluid, t), p), family_dim(family));
}

double eval_pressure(const SolutionFamily& family, const FluidParams& fluid, std::span<const double> x, double t) {
    const auto p = checked_point(family, x);
    return pressure_at(family, fluid, time_state(family, fluid, t), p);
}

std::vector<double> eval_force(const SolutionFamily& family, std::span<const double> x, double t) {
    const auto p = checked_point(family, x);
    // the force does not depend on viscosity; any valid fluid gives the same state
    return truncate(force_at(family, time_state(family, unit_fluid(), t), p), family_dim(family));
}

std::vector<double> eval_inertial_closed_form(const SolutionFamily& family, const FluidParams& fluid,
                                              std::span<const double> x, double t) {
    require_closed_inertial(family);
    const auto p = checked_point(family, x);
    return truncate(inertial_at(family, time_state(family, fluid, t), p), family_dim(family));
}

SampledSolution sample(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    return {sample_velocity(family, fluid, grid, t), sample_pressure(family, fluid, grid, t),
            sample_force(family, grid, t)};
}

VectorField sample_velocity(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    check_grid(family, grid);
    const auto s = time_state(family, fluid, t);
    return VectorField::from_function(grid, [&](const Point& x) { return velocity_at(family, s, x); });
}

VectorField sample_velocity_dt(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    check_grid(family, grid);
    const auto s = time_state(family, fluid, t);
    return VectorField::from_function(grid, [&](const Point& x) { return velocity_dt_at(family, s, x); });
}

VectorField sample_initial_velocity(const SolutionFamily& family, const Grid& grid) {
    check_grid(family, grid);
    return VectorField::from_function(grid, [&](const Point& x) { return shape_v0(family, x); });
}

ScalarField sample_pressure(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    check_grid(family, grid);
    const auto s = time_state(family, fluid, t);
    return ScalarField::from_function(grid, [&](const Point& x) { return pressure_at(family, fluid, s, x); });
}

VectorField sample_force(const SolutionFamily& family, const Grid& grid, double t) {
    check_grid(family, grid);
    const auto s = time_state(family, unit_fluid(), t);
    return VectorField::from_function(grid, [&](const Point& x) { return force_at(family, s, x); });
}

VectorField sample_inertial_closed_form(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                                        double t) {
    require_closed_inertial(family);
    check_grid(family, grid);
    const auto s = time_state(family, fluid, t);
    return VectorField::from_function(grid, [&](const Point& x) { return inertial_at(family, s, x); });
}

}  // namespace nsv
