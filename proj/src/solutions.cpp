#include "nsverify/solutions.hpp"

#include <numbers>
#include <stdexcept>

namespace nsv {

std::string_view to_string(Claim claim) {
    switch (claim) {
        case Claim::umbilical_zero: return "umbilical_zero";
        case Claim::satisfies_momentum: return "satisfies_momentum";
        case Claim::divergence_free: return "divergence_free";
        case Claim::pressure_matches_ppe: return "pressure_matches_ppe";
        case Claim::energy_decay: return "energy_decay";
    }
    return "unknown";
}

std::string_view to_string(ClaimStatus status) {
    return status == ClaimStatus::expected_pass ? "expected-pass" : "audit-required";
}

std::optional<ClaimStatus> FamilyMetadata::status_of(Claim claim) const {
    for (const auto& entry : paper_claims)
        if (entry.claim == claim) return entry.status;
    return std::nullopt;
}

namespace {

constexpr double pi2 = std::numbers::pi * std::numbers::pi;

std::vector<ClaimEntry> certified(bool with_energy) {
    std::vector<ClaimEntry> claims = {{Claim::umbilical_zero, ClaimStatus::expected_pass},
                                      {Claim::satisfies_momentum, ClaimStatus::expected_pass},
                                      {Claim::divergence_free, ClaimStatus::expected_pass},
                                      {Claim::pressure_matches_ppe, ClaimStatus::expected_pass}};
    if (with_energy) claims.push_back({Claim::energy_decay, ClaimStatus::expected_pass});
    return claims;
}

std::vector<FamilyMetadata> build_registry() {
    return {
        {FamilyTag::TaylorVortex2D, 2.0 * pi2, true, certified(true), "none"},
        {FamilyTag::ForcedTaylorVortex2D, 2.0 * pi2, true, certified(false), "G(t)"},
        {FamilyTag::ABCFlow3D, pi2, true, certified(true), "a, b, c"},
        {FamilyTag::ForcedABCFlow3D, pi2, true, certified(false), "a, b, c, G(t)"},
        // the uniform stream h(t) e1 advects the ABC field through b-dependent
        // terms, so these claims are measured rather than certified
        {FamilyTag::ABCExpForced3D, pi2, false,
         {{Claim::umbilical_zero, ClaimStatus::audit_required},
          {Claim::satisfies_momentum, ClaimStatus::audit_required},
          {Claim::divergence_free, ClaimStatus::expected_pass},
          {Claim::pressure_matches_ppe, ClaimStatus::audit_required}},
         "a, b, c, f_I, lambda"},
    };
}

}  // namespace

const std::vector<FamilyMetadata>& registry() {
    static const std::vector<FamilyMetadata> entries = build_registry();
    return entries;
}

const FamilyMetadata& metadata(FamilyTag tag) {
    for (const auto& entry : registry())
        if (entry.tag == tag) return entry;
    throw std::invalid_argument("unknown family tag");
}

SolutionFamily default_family(FamilyTag tag, double kappa) {
    const AbcCoefficients abc{1.0, 0.5, 0.25};
    const double rate = metadata(tag).decay_rate * kappa;
    switch (tag) {
        case FamilyTag::TaylorVortex2D: return TaylorVortex2D{};
        case FamilyTag::ForcedTaylorVortex2D: return ForcedTaylorVortex2D{TimeProfile::exponential(1.0, rate)};
        case FamilyTag::ABCFlow3D: return ABCFlow3D{abc};
        case FamilyTag::ForcedABCFlow3D: return ForcedABCFlow3D{abc, TimeProfile::exponential(1.0, rate)};
        case FamilyTag::ABCExpForced3D: return ABCExpForced3D{abc, 1.0, 1.0};
    }
    throw std::invalid_argument("unknown family tag");
}

std::vector<SpecialCase> special_cases(FamilyTag tag) {
    const AbcCoefficients abc{1.0, 0.5, 0.25};
    const AbcCoefficients zero{0.0, 0.0, 0.0};
    switch (tag) {
        case FamilyTag::TaylorVortex2D: return {};
        case FamilyTag::ForcedTaylorVortex2D:
            return {{"G = 0 reduces to the unforced vortex", ForcedTaylorVortex2D{TimeProfile::zero()},
                     TaylorVortex2D{}, false, true}};
        case FamilyTag::ABCFlow3D: return {{"a = b = c = 0 is the zero flow", ABCFlow3D{zero}, std::nullopt, true, true}};
        case FamilyTag::ForcedABCFlow3D:
            return {{"G = 0 reduces to the unforced ABC flow", ForcedABCFlow3D{abc, TimeProfile::zero()},
                     ABCFlow3D{abc}, false, true}};
        case FamilyTag::ABCExpForced3D:
            return {
                {"f_I = 0 reduces to the unforced ABC flow", ABCExpForced3D{abc, 0.0, 1.0}, ABCFlow3D{abc}, false,
                 true},
                {"b = 0 removes the advective cross-term of the uniform stream",
                 ABCExpForced3D{{abc.a, 0.0, abc.c}, 1.0, 1.0}, std::nullopt, false, true},
                {"a = b = c = 0 leaves only the uniform stream", ABCExpForced3D{zero, 1.0, 1.0}, std::nullopt, false,
                 true},
            };
    }
    throw std::invalid_argument("unknown family tag");
}

}  // namespace nsv
