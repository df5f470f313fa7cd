#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nsverify/operators.hpp"
#include "nsverify/spectral.hpp"
#include "support.hpp"

using namespace nsv;
using std::numbers::pi;

namespace {

const FluidParams kFluid(0.02, 1.0);
const AbcCoefficients kAbc{1.0, 0.5, 0.25};

ScalarField scalar(const Grid& g, double (*f)(double, double, double)) {
    return ScalarField::from_function(g, [&](const auto& x) { return f(x[0], x[1], x[2]); });
}

}  // namespace

TEST_CASE("gradient examples") {
    const Grid g = Grid::cube(2, 16);
    CHECK(sup_norm(gradient(ScalarField::constant(g, 4.2))) < 1e-14);
    CHECK(sup_norm(gradient(ScalarField::constant(g, 4.2), Backend::finite_difference)) < 1e-14);

    const auto s = scalar(g, [](double x, double, double) { return std::cos(2 * pi * x); });
    const auto expected = VectorField::from_function(
        g, [](const auto& x) { return std::array<double, 3>{-2 * pi * std::sin(2 * pi * x[0]), 0.0, 0.0}; });
    CHECK(sup_norm(gradient(s) - expected) < 1e-13);
}

TEST_CASE("FD gradient error falls fourfold from N = 32 to 64") {
    auto error = [](int n) {
        const Grid g = Grid::cube(2, n);
        const auto s = scalar(g, [](double x, double, double) { return std::cos(2 * pi * x); });
        const auto exact = scalar(g, [](double x, double, double) { return -2 * pi * std::sin(2 * pi * x); });
        return sup_norm(derivative(s, 0, Backend::finite_difference) - exact);
    };
    const double ratio = error(32) / error(64);
    CHECK(ratio > 3.6);
    CHECK(ratio < 4.4);
}

TEST_CASE("divergence examples") {
    const Grid g = Grid::cube(2, 16);
    CHECK(sup_norm(divergence(sample_initial_velocity(TaylorVortex2D{}, g))) < 1e-10);

    const auto s = scalar(g, [](double x, double y, double) { return std::sin(2 * pi * x) * std::sin(2 * pi * y); });
    CHECK(sup_norm(divergence(gradient(s)) - laplacian(s)) < 1e-12);

    const std::array<double, 2> c{1.5, -0.5};
    CHECK(sup_norm(divergence(VectorField::constant(g, c))) == 0.0);
}

TEST_CASE("laplacian examples") {
    const Grid g2 = Grid::cube(2, 16);
    const auto s = scalar(g2, [](double x, double y, double) { return std::sin(pi * x) * std::cos(pi * y); });
    CHECK(sup_norm(laplacian(s) + 2 * pi * pi * s) < 1e-12);
    CHECK(sup_norm(laplacian(ScalarField::constant(g2, 2.0))) == 0.0);

    const Grid g3 = Grid::cube(3, 16);
    const auto v0 = sample_initial_velocity(ABCFlow3D{kAbc}, g3);
    CHECK(sup_norm(laplacian(v0) + pi * pi * v0) < 1e-12);
}

TEST_CASE("curl examples") {
    testing::Rng rng(21);
    const Grid g3 = Grid::cube(3, 16);
    CHECK(sup_norm(curl(gradient(testing::random_scalar(rng, g3)))) < 1e-11);
    const Grid g2 = Grid::cube(2, 16);
    CHECK(sup_norm(curl(gradient(testing::random_scalar(rng, g2)))) < 1e-11);

    // Beltrami: curl v0 = -pi v0 for the ABC field with this orientation
    const auto v0 = sample_initial_velocity(ABCFlow3D{{1.0, 1.0, 1.0}}, g3);
    CHECK(sup_norm(std::get<VectorField>(curl(v0)) + pi * v0) < 1e-11);

    // Taylor vortex: dv2/dx1 - dv1/dx2 = 2 pi sin(pi x1) sin(pi x2)
    const auto w = std::get<ScalarField>(curl(sample_initial_velocity(TaylorVortex2D{}, g2)));
    const auto expected =
        scalar(g2, [](double x, double y, double) { return 2 * pi * std::sin(pi * x) * std::sin(pi * y); });
    CHECK(sup_norm(w - expected) < 1e-12);
}

TEST_CASE("advection examples") {
    const Grid g2 = Grid::cube(2, 32);
    const std::array<double, 2> c{0.7, -1.1};
    CHECK(sup_norm(advection(VectorField::constant(g2, c))) == 0.0);

    const auto v = sample_initial_velocity(TaylorVortex2D{}, g2);
    CHECK(sup_norm(advection(v) - sample_inertial_closed_form(TaylorVortex2D{}, kFluid, g2, 0.0)) < 1e-10);

    const Grid g3 = Grid::cube(3, 16);
    const auto w = sample_initial_velocity(ABCFlow3D{kAbc}, g3);
    CHECK(sup_norm(advection(w) - sample_inertial_closed_form(ABCFlow3D{kAbc}, kFluid, g3, 0.0)) < 1e-10);

    // the products stay below N / 3, so the 2/3 rule changes nothing here
    CHECK(sup_norm(advection(v, Backend::spectral, {true}) - advection(v)) < 1e-12);
}

TEST_CASE("dealiasing removes modes above N / 3") {
    const Grid g = Grid::cube(2, 16);
    // v1 = cos(6 pi x1), frequency 3 of 8: v1 dv1/dx1 lands at frequency 6
    const auto v = VectorField::from_function(
        g, [](const auto& x) { return std::array<double, 3>{std::cos(6 * pi * x[0]), 0.0, 0.0}; });
    CHECK(sup_norm(advection(v)) > 1.0);
    CHECK(sup_norm(advection(v, Backend::spectral, {true})) < 1e-12);
}

TEST_CASE("poisson examples") {
    const Grid g = Grid::cube(2, 16);
    const auto zero = poisson_solve(ScalarField(g));
    CHECK(sup_norm(zero.solution) == 0.0);

    const auto u = scalar(g, [](double x, double y, double) { return std::sin(pi * x) * std::cos(pi * y); });
    const auto solved = poisson_solve(-2 * pi * pi * u);
    CHECK(sup_norm(solved.solution - u) < 1e-12);
    CHECK(std::abs(solved.source_mean) < 1e-14);

    // the mean is removed and reported
    const auto shifted = poisson_solve(ScalarField::constant(g, 3.0) + u);
    CHECK(shifted.source_mean == doctest::Approx(3.0));
    CHECK(std::abs(mean(shifted.solution)) < 1e-15);

    const auto inertial = sample_inertial_closed_form(TaylorVortex2D{}, kFluid, g, 0.0);
    const auto p = poisson_solve(-1.0 * divergence(inertial)).solution;
    CHECK(sup_norm(p - sample_pressure(TaylorVortex2D{}, kFluid, g, 0.0)) < 1e-10);
}

TEST_CASE("pressure reconstruction examples") {
    const Grid g2 = Grid::cube(2, 16);
    const auto v = sample_initial_velocity(TaylorVortex2D{}, g2);
    CHECK(sup_norm(pressure_from_fields(v, VectorField(g2), kFluid) -
                   sample_pressure(TaylorVortex2D{}, kFluid, g2, 0.0)) < 1e-10);

    const Grid g3 = Grid::cube(3, 16);
    const double t = 0.7;
    const auto w = sample_velocity(ABCFlow3D{kAbc}, kFluid, g3, t);
    const auto p = pressure_from_fields(w, VectorField(g3), kFluid);
    const auto p0 = sample_pressure(ABCFlow3D{kAbc}, kFluid, g3, 0.0);
    CHECK(sup_norm(p - std::exp(-2 * pi * pi * kFluid.kappa * t) * p0) < 1e-10);

    const std::array<double, 2> c{1.0, 2.0};
    CHECK(sup_norm(pressure_from_fields(VectorField::constant(g2, c), VectorField(g2), kFluid)) == 0.0);
}

TEST_CASE("leray projection examples") {
    testing::Rng rng(31);
    const Grid g = Grid::cube(3, 16);
    CHECK(sup_norm(leray_project(gradient(testing::random_scalar(rng, g)))) < 1e-11);

    const auto v0 = sample_initial_velocity(ABCFlow3D{kAbc}, g);
    CHECK(sup_norm(leray_project(v0) - v0) < 1e-12);

    const Grid g2 = Grid::cube(2, 32);
    CHECK(sup_norm(leray_project(sample_inertial_closed_form(TaylorVortex2D{}, kFluid, g2, 0.0))) < 1e-10);

    const std::array<double, 3> c{1.0, -2.0, 0.5};
    const auto uniform = VectorField::constant(g, c);
    CHECK(sup_norm(leray_project(uniform) - uniform) == 0.0);
}

TEST_CASE("umbilical force examples") {
    const Grid g2 = Grid::cube(2, 32);
    for (double t : {0.0, 0.4, 2.0})
        CHECK(sup_norm(umbilical_force(sample_velocity(TaylorVortex2D{}, kFluid, g2, t))) < 1e-10);
    const Grid g3 = Grid::cube(3, 16);
    const ForcedABCFlow3D forced{kAbc, TimeProfile::constant(0.5)};
    CHECK(sup_norm(umbilical_force(sample_velocity(forced, kFluid, g3, 0.8))) < 1e-10);
    const std::array<double, 3> c{1.0, -2.0, 0.5};
    CHECK(sup_norm(umbilical_force(VectorField::constant(g3, c))) == 0.0);
    CHECK_THROWS_AS(umbilical_force(VectorField::constant(g3, c), Backend::finite_difference),
                    std::invalid_argument);
}

TEST_CASE("Nyquist modes have no first derivative") {
    const Grid g = Grid::cube(2, 8);
    // frequency N/2 along x1: cos(4 pi x1) alternates sign node to node
    const auto s = scalar(g, [](double x, double, double) { return std::cos(4 * pi * x); });
    CHECK(sup_norm(derivative(s, 0)) < 1e-13);
    // but it keeps its second derivative
    CHECK(sup_norm(laplacian(s) + 16 * pi * pi * s) < 1e-11);
}

// ---------------------------------------------------------------------------
// properties over seeded random band-limited fields

TEST_CASE("projector properties (property)") {
    testing::Rng rng(41);
    for (int n : {16, 32}) {
        for (int dim : {2, 3}) {
            if (dim == 3 && n == 32) continue;  // keep the suite fast
            for (int trial = 0; trial < 4; ++trial) {
                const Grid g = Grid::cube(dim, n);
                const auto w = testing::random_vector(rng, g, 4, 8);
                const auto pw = leray_project(w);
                CAPTURE(n);
                CAPTURE(dim);
                CHECK(sup_norm(leray_project(pw) - pw) < 1e-12);
                CHECK(sup_norm(divergence(pw)) < 1e-10);
                CHECK(sup_norm(pw + gradient_part(w) - w) < 1e-11);
            }
        }
    }
}

TEST_CASE("spectral derivatives are exact on trigonometric polynomials (property)") {
    testing::Rng rng(43);
    for (int trial = 0; trial < 8; ++trial) {
        const int dim = 2 + trial % 2;
        const Grid g = Grid::cube(dim, 16);
        const auto modes = testing::random_modes(rng, dim, 6, 5);
        const auto s = ScalarField::from_function(g, [&](const auto& x) { return testing::eval_modes(modes, x); });
        for (int axis = 0; axis < dim; ++axis) {
            const auto exact = ScalarField::from_function(
                g, [&](const auto& x) { return testing::eval_modes_dx(modes, x, axis); });
            CHECK(sup_norm(derivative(s, axis) - exact) < 1e-12);
        }
    }
}

TEST_CASE("FD order on sin(pi x1) is 2 +- 0.1") {
    for (bool lap : {false, true}) {
        std::vector<double> errs;
        for (int n : {16, 32, 64}) {
            const Grid g = Grid::cube(2, n);
            const auto s = scalar(g, [](double x, double, double) { return std::sin(pi * x); });
            if (lap)
                errs.push_back(sup_norm(laplacian(s, Backend::finite_difference) + pi * pi * s));
            else
                errs.push_back(sup_norm(derivative(s, 0, Backend::finite_difference) -
                                        scalar(g, [](double x, double, double) { return pi * std::cos(pi * x); })));
        }
        for (int i = 0; i < 2; ++i) {
            const double order = std::log2(errs[i] / errs[i + 1]);
            CHECK(order > 1.9);
            CHECK(order < 2.1);
        }
    }
}

TEST_CASE("the inertial term of the Taylor and ABC flows is a pure gradient") {
    const Grid g2 = Grid::cube(2, 32);
    const Grid g3 = Grid::cube(3, 16);
    for (double t : {0.0, 0.1, 1.0}) {
        CHECK(sup_norm(curl(advection(sample_velocity(TaylorVortex2D{}, kFluid, g2, t)))) < 1e-9);
        CHECK(sup_norm(curl(advection(sample_velocity(ABCFlow3D{kAbc}, kFluid, g3, t)))) < 1e-9);
    }
}

TEST_CASE("backend names") {
    CHECK(parse_backend("spectral") == Backend::spectral);
    CHECK(parse_backend("fd") == Backend::finite_difference);
    CHECK(to_string(Backend::finite_difference) == "fd");
    CHECK_THROWS_AS(parse_backend("chebyshev"), std::invalid_argument);
}

TEST_CASE("spectral workspace wavenumbers") {
    const Grid g = Grid::cube(2, 8);
    const auto& ws = workspace_for(g);
    const auto k = ws.wavenumbers(0);
    REQUIRE(k.size() == 8);
    CHECK(k[0] == 0.0);
    CHECK(k[1] == doctest::Approx(pi));
    CHECK(k[7] == doctest::Approx(-pi));
}

TEST_CASE("advection matches grad(|v|^2 / 2) - v x curl v (property)") {
    testing::Rng rng(47);
    const Grid g = Grid::cube(3, 16);
    for (int trial = 0; trial < 3; ++trial) {
        const auto v = testing::random_vector(rng, g, 2, 4);
        const auto w = std::get<VectorField>(curl(v));
        ScalarField half_sq(g);
        for (std::size_t i = 0; i < g.size(); ++i)
            half_sq[i] = 0.5 * (v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]);
        VectorField rhs = gradient(half_sq);
        for (std::size_t i = 0; i < g.size(); ++i) {
            rhs[0][i] -= v[1][i] * w[2][i] - v[2][i] * w[1][i];
            rhs[1][i] -= v[2][i] * w[0][i] - v[0][i] * w[2][i];
            rhs[2][i] -= v[0][i] * w[1][i] - v[1][i] * w[0][i];
        }
        CHECK(sup_norm(advection(v) - rhs) < 1e-9);
    }
}
