#include "nsverify/cli/export.hpp"

#include <fstream>
#include <stdexcept>

#include "nsverify/text.hpp"

namespace nsv::cli {

namespace {

/// Storage index of the node with per-axis indices (i0, i1, i2).
std::size_t node(const Grid& g, int i0, int i1, int i2) {
    std::array<int, 3> idx{i0, i1, i2};
    return g.flatten(idx);
}

void vector_block(std::string& out, const char* name, const VectorField& v) {
    const Grid& g = v.grid();
    out += "VECTORS ";
    out += name;
    out += " double\n";
    // VTK wants x1 fastest: the reverse of our storage order
    for (int i2 = 0; i2 < g.resolution(2); ++i2)
        for (int i1 = 0; i1 < g.resolution(1); ++i1)
            for (int i0 = 0; i0 < g.resolution(0); ++i0) {
                const std::size_t n = node(g, i0, i1, i2);
                for (int c = 0; c < 3; ++c) {
                    out += c < v.dim() ? format_17g(v[c][n]) : "0";
                    out += c < 2 ? " " : "\n";
                }
            }
}

}  // namespace

std::string to_vtk(const FieldBundle& f, const std::string& title) {
    const Grid& g = f.velocity.grid();
    require_same_grid(g, f.pressure.grid(), "pressure");
    require_same_grid(g, f.force.grid(), "force");
    std::string out = "# vtk DataFile Version 3.0\n" + title + "\nASCII\nDATASET STRUCTURED_POINTS\n";
    out += "DIMENSIONS " + std::to_string(g.resolution(0)) + " " + std::to_string(g.resolution(1)) + " " +
           std::to_string(g.resolution(2)) + "\n";
    out += "ORIGIN " + format_17g(g.origin(0)) + " " + format_17g(g.origin(1)) + " " + format_17g(g.origin(2)) + "\n";
    out += "SPACING " + format_17g(g.spacing(0)) + " " + format_17g(g.spacing(1)) + " " +
           format_17g(g.spacing(2)) + "\n";
    out += "POINT_DATA " + std::to_string(g.size()) + "\n";
    vector_block(out, "velocity", f.velocity);
    out += "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
    for (int i2 = 0; i2 < g.resolution(2); ++i2)
        for (int i1 = 0; i1 < g.resolution(1); ++i1)
            for (int i0 = 0; i0 < g.resolution(0); ++i0) out += format_17g(f.pressure[node(g, i0, i1, i2)]) + "\n";
    vector_block(out, "force", f.force);
    return out;
}

std::string to_csv(const FieldBundle& f) {
    const Grid& g = f.velocity.grid();
    require_same_grid(g, f.pressure.grid(), "pressure");
    const int dim = g.dim();
    std::string out;
    for (int a = 0; a < dim; ++a) out += "x" + std::to_string(a + 1) + ",";
    for (int a = 0; a < dim; ++a) out += "v" + std::to_string(a + 1) + ",";
    out += "p\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.point(i);
        for (int a = 0; a < dim; ++a) out += format_17g(x[a]) + ",";
        for (int a = 0; a < dim; ++a) out += format_17g(f.velocity[a][i]) + ",";
        out += format_17g(f.pressure[i]) + "\n";
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace nsv::cli
