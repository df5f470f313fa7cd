/// @file solutions.hpp
/// @brief Registry of the five solution families and the claims the
/// verification harness audits for each.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsverify/fields.hpp"

namespace nsv {

enum class Claim { umbilical_zero, satisfies_momentum, divergence_free, pressure_matches_ppe, energy_decay };

/// expected_pass claims are certified; audit_required claims are measured and
/// reported, and a contradicting measurement is not a tolerance failure.
enum class ClaimStatus { expected_pass, audit_required };

std::string_view to_string(Claim claim);
std::string_view to_string(ClaimStatus status);

struct ClaimEntry {
    Claim claim;
    ClaimStatus status;
};

struct FamilyMetadata {
    FamilyTag tag;
    double decay_rate;  ///< coefficient of kappa in the velocity decay exponent
    bool has_closed_inertial;
    std::vector<ClaimEntry> paper_claims;
    std::string parameters;  ///< human-readable parameter list

    std::optional<ClaimStatus> status_of(Claim claim) const;
};

/// Exactly five entries, in FamilyTag order.
const std::vector<FamilyMetadata>& registry();
const FamilyMetadata& metadata(FamilyTag tag);

/// Family built from the default verification parameters:
/// (a, b, c) = (1, 0.5, 0.25); forced families use G(t) = exp(-r t) with r
/// the family decay rate for `kappa`; ABCExpForced3D uses f_I = 1, lambda = 1.
SolutionFamily default_family(FamilyTag tag, double kappa = 0.02);

/// A degenerate parameterisation and the behaviour it must show.
struct SpecialCase {
    std::string name;
    SolutionFamily family;
    /// Family the case must agree with at every node and time, if any.
    std::optional<SolutionFamily> equivalent_to;
    bool zero_flow = false;       ///< velocity and pressure vanish identically
    bool zero_umbilical = false;  ///< the umbilical force vanishes identically
};

std::vector<SpecialCase> special_cases(FamilyTag tag);

}  // namespace nsv
