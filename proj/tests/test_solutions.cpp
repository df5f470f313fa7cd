#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nsverify/solutions.hpp"
#include "nsverify/verify.hpp"

using namespace nsv;
using std::numbers::pi;

namespace {

const FluidParams kFluid(0.02, 1.0);

Grid grid_for(const SolutionFamily& f) { return Grid::cube(family_dim(f), family_dim(f) == 2 ? 32 : 16); }

}  // namespace

TEST_CASE("registry lists the five families in tag order") {
    const auto& reg = registry();
    REQUIRE(reg.size() == 5);
    const FamilyTag order[] = {FamilyTag::TaylorVortex2D, FamilyTag::ForcedTaylorVortex2D, FamilyTag::ABCFlow3D,
                               FamilyTag::ForcedABCFlow3D, FamilyTag::ABCExpForced3D};
    for (int i = 0; i < 5; ++i) CHECK(reg[i].tag == order[i]);

    CHECK(metadata(FamilyTag::TaylorVortex2D).decay_rate == doctest::Approx(2 * pi * pi));
    CHECK(metadata(FamilyTag::ForcedTaylorVortex2D).decay_rate == doctest::Approx(2 * pi * pi));
    CHECK(metadata(FamilyTag::ABCFlow3D).decay_rate == doctest::Approx(pi * pi));
    CHECK(metadata(FamilyTag::ForcedABCFlow3D).decay_rate == doctest::Approx(pi * pi));
    CHECK(metadata(FamilyTag::ABCExpForced3D).decay_rate == doctest::Approx(pi * pi));
}

TEST_CASE("claim statuses") {
    for (auto tag : {FamilyTag::TaylorVortex2D, FamilyTag::ForcedTaylorVortex2D, FamilyTag::ABCFlow3D,
                     FamilyTag::ForcedABCFlow3D}) {
        const auto& m = metadata(tag);
        CHECK(m.has_closed_inertial);
        for (auto claim : {Claim::umbilical_zero, Claim::satisfies_momentum, Claim::divergence_free,
                           Claim::pressure_matches_ppe})
            CHECK(m.status_of(claim) == ClaimStatus::expected_pass);
    }
    CHECK(metadata(FamilyTag::TaylorVortex2D).status_of(Claim::energy_decay) == ClaimStatus::expected_pass);
    CHECK(metadata(FamilyTag::ABCFlow3D).status_of(Claim::energy_decay) == ClaimStatus::expected_pass);
    CHECK_FALSE(metadata(FamilyTag::ForcedTaylorVortex2D).status_of(Claim::energy_decay).has_value());

    const auto& iii = metadata(FamilyTag::ABCExpForced3D);
    CHECK_FALSE(iii.has_closed_inertial);
    CHECK(iii.status_of(Claim::umbilical_zero) == ClaimStatus::audit_required);
    CHECK(iii.status_of(Claim::satisfies_momentum) == ClaimStatus::audit_required);
    CHECK(iii.status_of(Claim::pressure_matches_ppe) == ClaimStatus::audit_required);
    CHECK(iii.status_of(Claim::divergence_free) == ClaimStatus::expected_pass);

    CHECK(to_string(ClaimStatus::audit_required) == "audit-required");
    CHECK(to_string(Claim::pressure_matches_ppe) == "pressure_matches_ppe");
}

TEST_CASE("default families") {
    for (const auto& m : registry()) CHECK(family_tag(default_family(m.tag)) == m.tag);
    const auto abc = std::get<ABCFlow3D>(default_family(FamilyTag::ABCFlow3D)).abc;
    CHECK(abc.a == 1.0);
    CHECK(abc.b == 0.5);
    CHECK(abc.c == 0.25);
    const auto forced = std::get<ForcedTaylorVortex2D>(default_family(FamilyTag::ForcedTaylorVortex2D, 0.05));
    // matched forcing: G(t) = exp(-2 pi^2 kappa t)
    CHECK(forced.forcing(1.0) == doctest::Approx(std::exp(-2 * pi * pi * 0.05)).epsilon(1e-14));
    const auto iii = std::get<ABCExpForced3D>(default_family(FamilyTag::ABCExpForced3D));
    CHECK(iii.f_i == 1.0);
    CHECK(iii.lambda == 1.0);
}

TEST_CASE("special cases behave as declared") {
    for (const auto& m : registry()) {
        for (const auto& sc : special_cases(m.tag)) {
            CAPTURE(sc.name);
            CHECK(family_tag(sc.family) == m.tag);
            const Grid g = grid_for(sc.family);
            for (double t : {0.0, 0.3, 1.0}) {
                CHECK(sup_norm(momentum_residual(sc.family, kFluid, g, t)) < 1e-8);
                if (sc.equivalent_to) {
                    CHECK(sup_norm(sample_velocity(sc.family, kFluid, g, t) -
                                   sample_velocity(*sc.equivalent_to, kFluid, g, t)) < 1e-15);
                    CHECK(sup_norm(sample_pressure(sc.family, kFluid, g, t) -
                                   sample_pressure(*sc.equivalent_to, kFluid, g, t)) < 1e-15);
                }
                if (sc.zero_flow) {
                    CHECK(sup_norm(sample_velocity(sc.family, kFluid, g, t)) == 0.0);
                    CHECK(sup_norm(sample_pressure(sc.family, kFluid, g, t)) == 0.0);
                }
                if (sc.zero_umbilical)
                    CHECK(sup_norm(umbilical_force(sample_velocity(sc.family, kFluid, g, t))) < 1e-10);
            }
        }
    }
    CHECK(special_cases(FamilyTag::TaylorVortex2D).empty());
    CHECK(special_cases(FamilyTag::ABCExpForced3D).size() == 3);
}

TEST_CASE("unforced decay rates fit to three significant digits") {
    const std::vector<double> times{0.1, 0.2, 0.4};
    for (double kappa : {0.01, 0.02, 0.1}) {
        const FluidParams fluid(kappa, 1.0);
        const double taylor = fitted_decay_rate(TaylorVortex2D{}, fluid, Grid::cube(2, 16), times);
        const double abc = fitted_decay_rate(ABCFlow3D{{1.0, 0.5, 0.25}}, fluid, Grid::cube(3, 12), times);
        CHECK(taylor == doctest::Approx(2 * pi * pi * kappa).epsilon(5e-4));
        CHECK(abc == doctest::Approx(pi * pi * kappa).epsilon(5e-4));
    }
}
