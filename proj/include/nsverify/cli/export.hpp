/// @file export.hpp
/// @brief Field export: legacy ASCII VTK and flat CSV.
#pragma once

#include <filesystem>
#include <string>

#include "nsverify/fields.hpp"

namespace nsv::cli {

struct FieldBundle {
    VectorField velocity;
    ScalarField pressure;
    VectorField force;
};

/// STRUCTURED_POINTS with x1 varying fastest; 2D vectors are zero-padded to
/// three components and the grid has DIMENSIONS N1 N2 1.
std::string to_vtk(const FieldBundle& fields, const std::string& title);
/// Header x1,x2[,x3],v1,v2[,v3],p, then one row per node in storage order
/// (x1 slowest).
std::string to_csv(const FieldBundle& fields);

/// Writes the whole string, creating parent directories; throws
/// std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace nsv::cli
