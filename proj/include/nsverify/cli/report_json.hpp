/// @file report_json.hpp
/// @brief JSON serialisation of reports. Floating-point numbers are written
/// with 17 significant digits so values round-trip exactly.
#pragma once

#include <string>

#include "nsverify/cli/config.hpp"
#include "nsverify/verify.hpp"

namespace nsv::cli {

inline constexpr const char* kSchema = "ns-verify/1";

Json to_json(const ResidualReport& report);
Json to_json(const ConvergenceStudy& study);

/// Document skeleton: schema, command, timestamp and resolved config.
/// The timestamp honours SOURCE_DATE_EPOCH when set.
Json report_header(const RunConfig& config);

/// Pretty-printed, two-space indent, trailing newline.
std::string dump(const Json& doc);

}  // namespace nsv::cli
