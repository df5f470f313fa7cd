#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nsverify/verify.hpp"
#include "support.hpp"

using namespace nsv;
using std::numbers::pi;

namespace {

const FluidParams kFluid(0.02, 1.0);
const AbcCoefficients kAbc{1.0, 0.5, 0.25};
const std::vector<double> kTimes{0.0, 0.1, 0.5, 1.0};

Grid grid_for(const SolutionFamily& f) { return Grid::cube(family_dim(f), family_dim(f) == 2 ? 32 : 16); }

std::vector<SolutionFamily> certified_families() {
    return {default_family(FamilyTag::TaylorVortex2D), default_family(FamilyTag::ForcedTaylorVortex2D),
            default_family(FamilyTag::ABCFlow3D), default_family(FamilyTag::ForcedABCFlow3D),
            ForcedTaylorVortex2D{TimeProfile::constant(1.0)}, ForcedABCFlow3D{kAbc, TimeProfile::exponential(2.0, 0.3)}};
}

const Verdict* verdict_of(const ResidualReport& r, Claim claim) {
    for (const auto& v : r.verdicts)
        if (v.claim == claim) return &v.verdict;
    return nullptr;
}

}  // namespace

TEST_CASE("certified families satisfy the equations") {
    for (const auto& family : certified_families()) {
        CAPTURE(describe(family));
        const Grid g = grid_for(family);
        CHECK(initial_condition_check(family, g) <= 1e-15);
        for (double t : kTimes) {
            CHECK(sup_norm(momentum_residual(family, kFluid, g, t)) < 1e-8);
            CHECK(sup_norm(divergence_residual(family, kFluid, g, t)) < 1e-10);
            CHECK(ppe_consistency(family, kFluid, g, t) < 1e-9);
            CHECK(inertial_curl_sup(family, kFluid, g, t) < 1e-10);
            CHECK(sup_norm(predicted_residual(family, kFluid, g, t)) == 0.0);
        }
        for (const auto& [t, u] : umbilical_audit(family, kFluid, g, kTimes)) CHECK(u < 1e-10);
    }
}

TEST_CASE("certified families hold for other fluids") {
    for (const FluidParams fluid : {FluidParams(0.001, 1.0), FluidParams(0.2, 3.5)}) {
        for (const auto& family : certified_families()) {
            const Grid g = grid_for(family);
            CHECK(sup_norm(momentum_residual(family, fluid, g, 0.7)) < 1e-8);
            CHECK(ppe_consistency(family, fluid, g, 0.7) < 1e-9);
        }
    }
}

TEST_CASE("cell energy") {
    const Grid g2 = Grid::cube(2, 16);
    CHECK(cell_energy(TaylorVortex2D{}, kFluid, g2, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    // E(t) = 2 exp(-4 pi^2 kappa t)
    CHECK(cell_energy(TaylorVortex2D{}, kFluid, g2, 1.0) ==
          doctest::Approx(2.0 * std::exp(-4 * pi * pi * 0.02)).epsilon(1e-13));

    const Grid g3 = Grid::cube(3, 12);
    // 8 (a^2 + b^2 + c^2) at (1, 0.5, 0.25)
    const double e_abc = cell_energy(ABCFlow3D{kAbc}, kFluid, g3, 0.0);
    CHECK(e_abc == doctest::Approx(10.5).epsilon(1e-14));

    // independent cross-check: midpoint sum on a staggered 10^3 lattice
    double sum = 0.0;
    const int m = 10;
    const double h = 2.0 / m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const std::array<double, 3> x{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h};
                const auto v = eval_initial_velocity(ABCFlow3D{kAbc}, x);
                sum += (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) * h * h * h;
            }
    CHECK(sum == doctest::Approx(e_abc).epsilon(1e-13));
}

TEST_CASE("energy decay claim") {
    for (auto tag : {FamilyTag::TaylorVortex2D, FamilyTag::ABCFlow3D}) {
        const auto family = default_family(tag);
        const auto report = verify_family(family, kFluid, grid_for(family), kTimes);
        bool found = false;
        for (const auto& v : report.verdicts) {
            if (v.claim != Claim::energy_decay) continue;
            found = true;
            CHECK(v.verdict == Verdict::pass);
            CHECK(v.measured < 1e-10);
        }
        CHECK(found);
        REQUIRE(report.energy_series.size() == kTimes.size());
        for (std::size_t i = 1; i < kTimes.size(); ++i)
            CHECK(report.energy_series[i].second < report.energy_series[i - 1].second);
    }
}

TEST_CASE("uniform-stream family: measured residual matches the prediction") {
    for (const ABCExpForced3D family : {ABCExpForced3D{kAbc, 1.0, 1.0}, ABCExpForced3D{{1.0, 1.0, 1.0}, 2.0, 0.0}}) {
        const Grid g = Grid::cube(3, 16);
        for (double t : {0.1, 0.5, 1.0}) {
            const auto predicted = predicted_residual(family, kFluid, g, t);
            CHECK(sup_norm(predicted) > 1e-3);
            CHECK(sup_norm(momentum_residual(family, kFluid, g, t) - predicted) < 1e-8);
            CHECK(sup_norm(umbilical_force(sample_velocity(family, kFluid, g, t)) - predicted) < 1e-8);
            CHECK(sup_norm(divergence_residual(family, kFluid, g, t)) < 1e-10);
        }
        CHECK(sup_norm(predicted_residual(family, kFluid, g, 0.0)) == 0.0);  // h(0) = 0
    }
}

TEST_CASE("the inertial term keeps its gradient structure under scaling") {
    const double c = 10.0;
    const Grid g2 = Grid::cube(2, 32);
    const auto v = c * sample_velocity(TaylorVortex2D{}, kFluid, g2, 0.3);
    CHECK(sup_norm(curl(advection(v))) < 1e-10 * c * c);
    CHECK(sup_norm(umbilical_force(v)) < 1e-10 * c * c);
    const Grid g3 = Grid::cube(3, 16);
    const auto w = c * sample_velocity(ABCFlow3D{kAbc}, kFluid, g3, 0.3);
    CHECK(sup_norm(curl(advection(w))) < 1e-10 * c * c);
    CHECK(sup_norm(umbilical_force(w)) < 1e-10 * c * c);
}

TEST_CASE("duhamel evolution matches the closed forms") {
    for (const auto& family : certified_families())
        CHECK(evolve_vs_closed_form(family, kFluid, grid_for(family), 1.0, 128) < 1e-8);
    // the uniform stream is carried by the drift term
    CHECK(evolve_vs_closed_form(ABCExpForced3D{{0.0, 0.0, 0.0}, 1.0, 1.0}, kFluid, Grid::cube(3, 12), 1.0, 16) <
          1e-12);
    CHECK_THROWS_AS(evolve_vs_closed_form(TaylorVortex2D{}, kFluid, Grid::cube(2, 16), 1.0, 0), std::invalid_argument);

    const auto spec = family_evolution(ABCExpForced3D{kAbc, 1.0, 1.0}, kFluid, Grid::cube(3, 12));
    CHECK_FALSE(spec.has_force());
    CHECK(spec.drift().has_value());
}

TEST_CASE("verify_family verdicts and exit codes") {
    std::vector<ResidualReport> reports;
    for (const auto& m : registry()) {
        if (m.tag == FamilyTag::ABCExpForced3D) continue;
        const auto family = default_family(m.tag);
        reports.push_back(verify_family(family, kFluid, grid_for(family), kTimes));
        for (const auto& v : reports.back().verdicts) CHECK(v.verdict == Verdict::pass);
        CHECK(reports.back().norms.size() == kTimes.size());
        CHECK_FALSE(reports.back().prediction.has_value());
    }
    CHECK(exit_code(reports) == 0);

    const auto iii = verify_family(default_family(FamilyTag::ABCExpForced3D), kFluid, Grid::cube(3, 16), kTimes);
    CHECK(*verdict_of(iii, Claim::umbilical_zero) == Verdict::measured_contradicts_paper);
    CHECK(*verdict_of(iii, Claim::satisfies_momentum) == Verdict::measured_contradicts_paper);
    CHECK(*verdict_of(iii, Claim::divergence_free) == Verdict::pass);
    REQUIRE(iii.prediction.has_value());
    CHECK(iii.prediction->agrees);
    CHECK(iii.prediction->max_umbilical_mismatch < 1e-8);
    CHECK(exit_code({iii}) == 3);
    CHECK_FALSE(iii.notes.empty());

    // b = 0: the cross-term vanishes and every claim holds
    const auto b0 = verify_family(ABCExpForced3D{{1.0, 0.0, 0.25}, 1.0, 1.0}, kFluid, Grid::cube(3, 16), kTimes);
    CHECK(exit_code({b0}) == 0);

    // a tolerance failure outranks a contradiction
    VerifyOptions mutated;
    mutated.residual.velocity_scale = 1.01;
    const auto bad = verify_family(TaylorVortex2D{}, kFluid, Grid::cube(2, 32), kTimes, mutated);
    CHECK(*verdict_of(bad, Claim::satisfies_momentum) == Verdict::fail);
    CHECK(exit_code({bad}) == 2);
    CHECK(exit_code({iii, bad}) == 2);

    auto drifted = reports.front();
    drifted.initial_condition_err = 1e-12;
    CHECK(exit_code({drifted}) == 2);
    auto disagreeing = iii;
    disagreeing.prediction->agrees = false;
    CHECK(exit_code({disagreeing}) == 2);
    CHECK(exit_code({}) == 0);
}

TEST_CASE("mutation self-test: a 1% velocity error is caught") {
    ResidualOptions scaled{1.01};
    for (const auto& family : certified_families()) {
        const double r = sup_norm(momentum_residual(family, kFluid, grid_for(family), 0.5, scaled));
        CHECK(r > 1e-3);
    }
}

TEST_CASE("verify_family rejects bad times") {
    const Grid g = Grid::cube(2, 16);
    CHECK_THROWS_AS(verify_family(TaylorVortex2D{}, kFluid, g, {}), std::invalid_argument);
    CHECK_THROWS_AS(verify_family(TaylorVortex2D{}, kFluid, g, {-0.5}), std::invalid_argument);
}

TEST_CASE("fitted order on synthetic data") {
    CHECK(fitted_order({{10, 3e-2}, {20, 7.5e-3}, {40, 1.875e-3}}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fitted_order({{16, 1.0}, {32, 1.0 / 16}, {64, 1.0 / 256}}) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("convergence studies") {
    const FieldSpec spec;
    for (auto kind : {ConvergenceKind::fd_gradient, ConvergenceKind::fd_laplacian}) {
        const auto study = convergence_study(kind, spec, {16, 32, 64});
        CHECK(study.points.size() == 3);
        CHECK(study.fitted_order > 1.9);
        CHECK(study.fitted_order < 2.1);
    }
    const auto duhamel = convergence_study(ConvergenceKind::duhamel_panels, spec, {16, 32, 64});
    CHECK(duhamel.fitted_order > 3.8);
    CHECK(duhamel.fitted_order < 4.2);
    for (const auto& p : convergence_study(ConvergenceKind::spectral_gradient, spec, {8, 16, 32}).points)
        CHECK(p.error <= 1e-12);
    for (const auto& p : convergence_study(ConvergenceKind::spectral_laplacian, spec, {8, 16, 32}).points)
        CHECK(p.error <= 1e-12);

    CHECK_THROWS_AS(convergence_study(ConvergenceKind::fd_gradient, spec, {16, 32}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(ConvergenceKind::fd_gradient, spec, {16, 33, 64}), std::invalid_argument);
}

TEST_CASE("convergence kind names") {
    CHECK(convergence_kind("gradient", Backend::finite_difference) == ConvergenceKind::fd_gradient);
    CHECK(convergence_kind("laplacian", Backend::spectral) == ConvergenceKind::spectral_laplacian);
    CHECK(convergence_kind("duhamel", Backend::spectral) == ConvergenceKind::duhamel_panels);
    CHECK_THROWS_AS(convergence_kind("curl", Backend::spectral), std::invalid_argument);
    CHECK(to_string(Verdict::measured_contradicts_paper) == "measured-contradicts-paper");
}
