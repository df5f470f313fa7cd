#include "nsverify/operators.hpp"

#include <complex>
#include <stdexcept>
#include <string>

#include "nsverify/spectral.hpp"

namespace nsv {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

std::size_t stride_of(const Grid& g, int axis) {
    std::size_t s = 1;
    for (int a = axis + 1; a < g.dim(); ++a) s *= static_cast<std::size_t>(g.resolution(a));
    return s;
}

void check_axis(const Grid& g, int axis) {
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("axis out of range");
}

ScalarField spectral_derivative(const ScalarField& s, int axis) {
    auto& ws = workspace_for(s.grid());
    auto spec = ws.forward(s.values());
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= I * ws.derivative_k(m, axis);
    return ScalarField(s.grid(), ws.inverse(spec));
}

ScalarField fd_derivative(const ScalarField& s, int axis) {
    const Grid& g = s.grid();
    const int n = g.resolution(axis);
    const std::size_t stride = stride_of(g, axis);
    const double inv2h = 1.0 / (2.0 * g.spacing(axis));
    ScalarField out(g);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int m = static_cast<int>((i / stride) % n);
        const std::size_t base = i - static_cast<std::size_t>(m) * stride;
        const std::size_t up = base + static_cast<std::size_t>((m + 1) % n) * stride;
        const std::size_t down = base + static_cast<std::size_t>((m + n - 1) % n) * stride;
        out[i] = (s[up] - s[down]) * inv2h;
    }
    return out;
}

ScalarField fd_laplacian(const ScalarField& s) {
    const Grid& g = s.grid();
    ScalarField out(g);
    for (int axis = 0; axis < g.dim(); ++axis) {
        const int n = g.resolution(axis);
        const std::size_t stride = stride_of(g, axis);
        const double invh2 = 1.0 / (g.spacing(axis) * g.spacing(axis));
        for (std::size_t i = 0; i < s.size(); ++i) {
            const int m = static_cast<int>((i / stride) % n);
            const std::size_t base = i - static_cast<std::size_t>(m) * stride;
            const std::size_t up = base + static_cast<std::size_t>((m + 1) % n) * stride;
            const std::size_t down = base + static_cast<std::size_t>((m + n - 1) % n) * stride;
            out[i] += (s[up] - 2.0 * s[i] + s[down]) * invh2;
        }
    }
    return out;
}

void require_spectral(Backend backend, std::string_view op) {
    if (backend != Backend::spectral)
        throw std::invalid_argument(std::string(op) + " is only available with the spectral backend");
}

}  // namespace

std::string_view to_string(Backend backend) {
    return backend == Backend::spectral ? "spectral" : "fd";
}

Backend parse_backend(std::string_view name) {
    if (name == "spectral") return Backend::spectral;
    if (name == "fd" || name == "finite_difference") return Backend::finite_difference;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

ScalarField derivative(const ScalarField& s, int axis, Backend backend) {
    check_axis(s.grid(), axis);
    return backend == Backend::spectral ? spectral_derivative(s, axis) : fd_derivative(s, axis);
}

VectorField gradient(const ScalarField& s, Backend backend) {
    std::vector<ScalarField> comps;
    for (int axis = 0; axis < s.grid().dim(); ++axis) comps.push_back(derivative(s, axis, backend));
    return VectorField(std::move(comps));
}

ScalarField divergence(const VectorField& v, Backend backend) {
    ScalarField out(v.grid());
    for (int axis = 0; axis < v.dim(); ++axis) out += derivative(v[axis], axis, backend);
    return out;
}

ScalarField laplacian(const ScalarField& s, Backend backend) {
    if (backend == Backend::finite_difference) return fd_laplacian(s);
    auto& ws = workspace_for(s.grid());
    auto spec = ws.forward(s.values());
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= -ws.k_squared(m);
    return ScalarField(s.grid(), ws.inverse(spec));
}

VectorField laplacian(const VectorField& v, Backend backend) {
    std::vector<ScalarField> comps;
    for (int c = 0; c < v.dim(); ++c) comps.push_back(laplacian(v[c], backend));
    return VectorField(std::move(comps));
}

CurlField curl(const VectorField& v, Backend backend) {
    auto d = [&](int comp, int axis) { return derivative(v[comp], axis, backend); };
    if (v.dim() == 2) return d(1, 0) - d(0, 1);
    return VectorField({d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)});
}

double sup_norm(const CurlField& c) {
    return std::visit([](const auto& f) { return sup_norm(f); }, c);
}

VectorField advection(const VectorField& v, Backend backend, AdvectionOptions options) {
    const Grid& g = v.grid();
    const int dim = v.dim();
    if (!options.dealias) {
        VectorField out(g);
        for (int j = 0; j < dim; ++j) {
            for (int i = 0; i < dim; ++i) {
                const ScalarField dvi = derivative(v[i], j, backend);
                for (std::size_t n = 0; n < g.size(); ++n) out[i][n] += v[j][n] * dvi[n];
            }
        }
        return out;
    }

    require_spectral(backend, "dealiased advection");
    auto& ws = workspace_for(g);
    constexpr double band = 1.0 / 3.0;
    auto filter = [&](Spectrum& spec) {
        for (std::size_t m = 0; m < spec.size(); ++m)
            if (ws.outside_band(m, band)) spec[m] = 0.0;
    };
    std::vector<Spectrum> vhat;
    std::vector<std::vector<double>> vf;
    for (int c = 0; c < dim; ++c) {
        vhat.push_back(ws.forward(v[c].values()));
        filter(vhat.back());
        vf.push_back(ws.inverse(vhat.back()));
    }
    VectorField out(g);
    for (int i = 0; i < dim; ++i) {
        std::vector<double> product(g.size(), 0.0);
        for (int j = 0; j < dim; ++j) {
            Spectrum d = vhat[i];
            for (std::size_t m = 0; m < d.size(); ++m) d[m] *= I * ws.derivative_k(m, j);
            const auto dvi = ws.inverse(d);
            for (std::size_t n = 0; n < g.size(); ++n) product[n] += vf[j][n] * dvi[n];
        }
        auto spec = ws.forward(product);
        filter(spec);
        out[i] = ScalarField(g, ws.inverse(spec));
    }
    return out;
}

PoissonSolution poisson_solve(const ScalarField& source) {
    auto& ws = workspace_for(source.grid());
    auto spec = ws.forward(source.values());
    const double source_mean = spec[0].real() / static_cast<double>(source.size());
    spec[0] = 0.0;
    for (std::size_t m = 1; m < spec.size(); ++m) spec[m] /= -ws.k_squared(m);
    return {ScalarField(source.grid(), ws.inverse(spec)), source_mean};
}

ScalarField pressure_from_fields(const VectorField& v, const VectorField& f, const FluidParams& fluid) {
    require_same_grid(v.grid(), f.grid(), "pressure_from_fields");
    VectorField rhs = f - advection(v);
    ScalarField source = divergence(rhs);
    source *= fluid.rho;
    return poisson_solve(source).solution;
}

VectorField leray_project(const VectorField& w) {
    const Grid& g = w.grid();
    auto& ws = workspace_for(g);
    const int dim = w.dim();
    std::vector<Spectrum> what;
    for (int c = 0; c < dim; ++c) what.push_back(ws.forward(w[c].values()));
    for (std::size_t m = 0; m < ws.modes(); ++m) {
        const double kk = ws.derivative_k_squared(m);
        if (kk == 0.0) continue;
        std::complex<double> dot = 0.0;
        for (int c = 0; c < dim; ++c) dot += ws.derivative_k(m, c) * what[c][m];
        for (int c = 0; c < dim; ++c) what[c][m] -= ws.derivative_k(m, c) * dot / kk;
    }
    std::vector<ScalarField> comps;
    for (int c = 0; c < dim; ++c) comps.emplace_back(g, ws.inverse(what[c]));
    return VectorField(std::move(comps));
}

VectorField gradient_part(const VectorField& w) { return gradient(poisson_solve(divergence(w)).solution); }

VectorField umbilical_force(const VectorField& v, Backend backend) {
    require_spectral(backend, "umbilical_force");
    return leray_project(advection(v, backend));
}

}  // namespace nsv
