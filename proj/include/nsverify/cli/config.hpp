/// @file config.hpp
/// @brief Run configuration shared by all ns-verify commands.
///
/// Options arrive as flag text, either from the command line or from a JSON
/// config document whose keys are the flag names. Both go through the same
/// parser, so a report's embedded config re-runs exactly.
#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsverify/fields.hpp"
#include "nsverify/operators.hpp"

namespace nsv::cli {

using Json = nlohmann::ordered_json;

/// Flag name (without dashes) -> flag text.
using RawOptions = std::map<std::string, std::string>;

struct RunConfig {
    std::string command;
    std::vector<FamilyTag> families;
    std::vector<int> grid;  ///< one entry except for convergence studies
    double kappa = 0.02;
    double rho = 1.0;
    AbcCoefficients abc{};
    std::string forcing = "matched";
    std::vector<double> times{0.0, 0.1, 0.5, 1.0};
    std::vector<int> panels;  ///< empty: 64 Simpson panels per unit time
    Backend backend = Backend::spectral;
    std::string out = ".";
    std::string format = "both";
    std::string op = "laplacian";
    double corrupt_velocity = 1.0;  ///< hidden mutation self-test knob

    FluidParams fluid() const { return {kappa, rho}; }
};

/// Keys accepted in config documents (and flags), by command.
const std::vector<std::string>& known_keys(const std::string& command);

/// Reads a config document. A full report (with "schema" and "config") is
/// accepted and its embedded config used. Unknown keys are rejected.
RawOptions load_config_file(const std::filesystem::path& path, const std::string& command);
RawOptions raw_options_from_json(const Json& doc, const std::string& command);

/// Applies defaults and validates. Throws std::invalid_argument with a
/// message naming the offending option.
RunConfig resolve(const std::string& command, const RawOptions& raw);

/// Resolved config in the config-document format.
Json to_json(const RunConfig& config);

/// Family instance for `tag` from the physical parameters of `config`.
/// forcing: "matched" gives G = exp(-r t) (forced families) and f_I = 1,
/// lambda = 1 (ABCExpForced3D); otherwise a time profile such as
/// "const:1", "exp:1,0.5", "table:0=1;1=0.5" or "zero".
SolutionFamily build_family(FamilyTag tag, const RunConfig& config);

}  // namespace nsv::cli
