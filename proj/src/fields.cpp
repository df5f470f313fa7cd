#include "nsverify/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nsv {

Grid::Grid(int dim, std::array<int, 3> resolution, std::array<double, 3> period, std::array<double, 3> origin)
    : dim_(dim), resolution_(resolution), period_(period), origin_(origin) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("grid dimension must be 2 or 3");
    for (int axis = 0; axis < 3; ++axis) {
        if (axis >= dim) {
            // unused axes are normalised so that grid equality ignores them
            resolution_[axis] = 1;
            period_[axis] = 1.0;
            origin_[axis] = 0.0;
            continue;
        }
        if (resolution_[axis] < 4 || resolution_[axis] % 2 != 0)
            throw std::invalid_argument("grid resolution must be even and >= 4 on every axis");
        if (!(period_[axis] > 0.0) || !std::isfinite(period_[axis]))
            throw std::invalid_argument("grid period must be positive");
        if (!std::isfinite(origin_[axis])) throw std::invalid_argument("grid origin must be finite");
    }
}

Grid Grid::cube(int dim, int n, double period) {
    return Grid(dim, {n, n, n}, {period, period, period});
}

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (int axis = 0; axis < dim_; ++axis) n *= static_cast<std::size_t>(resolution_[axis]);
    return n;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int axis = 0; axis < dim_; ++axis) v *= spacing(axis);
    return v;
}

double Grid::domain_volume() const {
    double v = 1.0;
    for (int axis = 0; axis < dim_; ++axis) v *= period_[axis];
    return v;
}

std::array<int, 3> Grid::unravel(std::size_t flat) const {
    std::array<int, 3> index{0, 0, 0};
    for (int axis = dim_ - 1; axis >= 0; --axis) {
        const auto n = static_cast<std::size_t>(resolution_[axis]);
        index[axis] = static_cast<int>(flat % n);
        flat /= n;
    }
    return index;
}

std::size_t Grid::flatten(const std::array<int, 3>& index) const {
    std::size_t flat = 0;
    for (int axis = 0; axis < dim_; ++axis) flat = flat * resolution_[axis] + index[axis];
    return flat;
}

std::array<double, 3> Grid::point(std::size_t flat) const {
    const auto index = unravel(flat);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int axis = 0; axis < dim_; ++axis) x[axis] = coordinate(axis, index[axis]);
    return x;
}

std::string Grid::summary() const {
    std::ostringstream os;
    for (int axis = 0; axis < dim_; ++axis) os << (axis ? "x" : "") << resolution_[axis];
    os << " on [" << origin_[0] << ", " << origin_[0] + period_[0] << ")^" << dim_;
    return os.str();
}

void require_same_grid(const Grid& a, const Grid& b, std::string_view what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(Grid grid) : grid_(std::move(grid)), data_(grid_.size(), 0.0) {}

ScalarField::ScalarField(Grid grid, std::vector<double> samples) : grid_(std::move(grid)), data_(std::move(samples)) {
    if (data_.size() != grid_.size()) throw std::invalid_argument("sample count does not match the grid");
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); }))
        throw std::invalid_argument("field samples must be finite");
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
    return ScalarField(grid, std::vector<double>(grid.size(), value));
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(grid_, other.grid_, "scalar +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(grid_, other.grid_, "scalar -=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
}

VectorField::VectorField(const Grid& grid) : components_(grid.dim(), ScalarField(grid)) {}

VectorField::VectorField(std::vector<ScalarField> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("vector field needs components");
    const Grid& g = components_.front().grid();
    if (static_cast<int>(components_.size()) != g.dim())
        throw std::invalid_argument("vector field must have one component per dimension");
    for (const auto& c : components_) require_same_grid(g, c.grid(), "vector field");
}

VectorField VectorField::constant(const Grid& grid, std::span<const double> value) {
    if (static_cast<int>(value.size()) != grid.dim()) throw std::invalid_argument("constant vector has wrong length");
    std::vector<ScalarField> comps;
    for (int c = 0; c < grid.dim(); ++c) comps.push_back(ScalarField::constant(grid, value[c]));
    return VectorField(std::move(comps));
}

VectorField& VectorField::operator+=(const VectorField& other) {
    require_same_grid(grid(), other.grid(), "vector +=");
    for (int c = 0; c < dim(); ++c) components_[c] += other.components_[c];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    require_same_grid(grid(), other.grid(), "vector -=");
    for (int c = 0; c < dim(); ++c) components_[c] -= other.components_[c];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (auto& c : components_) c *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

double sup_norm(const ScalarField& s) {
    double m = 0.0;
    for (double v : s.values()) m = std::max(m, std::abs(v));
    return m;
}

double sup_norm(const VectorField& v) {
    double m = 0.0;
    for (int c = 0; c < v.dim(); ++c) m = std::max(m, sup_norm(v[c]));
    return m;
}

double l2_norm(const ScalarField& s) {
    double sum = 0.0;
    for (double v : s.values()) sum += v * v;
    return std::sqrt(sum * s.grid().cell_volume());
}

double l2_norm(const VectorField& v) {
    double sum = 0.0;
    for (int c = 0; c < v.dim(); ++c) {
        const double n = l2_norm(v[c]);
        sum += n * n;
    }
    return std::sqrt(sum);
}

double mean(const ScalarField& s) {
    double sum = 0.0;
    for (double v : s.values()) sum += v;
    return sum / static_cast<double>(s.size());
}

FluidParams::FluidParams(double kappa_, double rho_) : kappa(kappa_), rho(rho_) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be positive");
}

}  // namespace nsv
