#include "nsverify/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsverify/operators.hpp"
#include "nsverify/spectral.hpp"

namespace nsv {

int TimeQuadrature::panels_for(double t) const {
    if (panels > 0) return panels;
    if (panels_per_unit_time <= 0) throw std::invalid_argument("panels_per_unit_time must be positive");
    return std::max(1, static_cast<int>(std::ceil(panels_per_unit_time * t)));
}

EvolutionSpec::EvolutionSpec(FluidParams fluid, VectorField initial, ForceSource force,
                             std::optional<std::vector<TimeProfile>> drift, TimeQuadrature quadrature)
    : fluid_(fluid), initial_(std::move(initial)), force_(std::move(force)), drift_(std::move(drift)),
      quadrature_(quadrature) {
    const double div = sup_norm(divergence(initial_));
    if (div > 1e-8) throw std::invalid_argument("initial field is not divergence-free (sup |div v0| > 1e-8)");
    if (quadrature_.panels < 0) throw std::invalid_argument("panel count must be non-negative");
    if (drift_ && static_cast<int>(drift_->size()) != initial_.dim())
        throw std::invalid_argument("drift needs one time profile per velocity component");
    if (const auto* tab = std::get_if<TabulatedForce>(&force_)) {
        if (tab->times.size() != tab->fields.size() || tab->times.empty())
            throw std::invalid_argument("tabulated force needs one field per timestamp");
        for (std::size_t i = 1; i < tab->times.size(); ++i)
            if (!(tab->times[i] > tab->times[i - 1]))
                throw std::invalid_argument("force timestamps must be strictly increasing");
        for (const auto& f : tab->fields) require_same_grid(initial_.grid(), f.grid(), "tabulated force");
    }
    if (const auto* family = std::get_if<SolutionFamily>(&force_))
        if (family_dim(*family) != initial_.dim())
            throw std::invalid_argument("force family dimension does not match the initial field");
}

VectorField EvolutionSpec::force_at(double t) const {
    if (const auto* tab = std::get_if<TabulatedForce>(&force_)) {
        if (t < tab->times.front() || t > tab->times.back())
            throw std::out_of_range("tabulated force does not cover the quadrature horizon");
        auto it = std::upper_bound(tab->times.begin(), tab->times.end(), t);
        if (it == tab->times.end()) return tab->fields.back();
        const auto i = static_cast<std::size_t>(it - tab->times.begin());
        const double w = (t - tab->times[i - 1]) / (tab->times[i] - tab->times[i - 1]);
        return (1.0 - w) * tab->fields[i - 1] + w * tab->fields[i];
    }
    if (const auto* family = std::get_if<SolutionFamily>(&force_)) return sample_force(*family, initial_.grid(), t);
    return VectorField(initial_.grid());
}

VectorField heat_propagate(const VectorField& v0, const FluidParams& fluid, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat_propagate: time must be non-negative");
    if (t == 0.0) return v0;
    auto& ws = workspace_for(v0.grid());
    std::vector<ScalarField> comps;
    for (int c = 0; c < v0.dim(); ++c) {
        auto spec = ws.forward(v0[c].values());
        for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= std::exp(-fluid.kappa * ws.k_squared(m) * t);
        comps.emplace_back(v0.grid(), ws.inverse(spec));
    }
    return VectorField(std::move(comps));
}

VectorField project_force(const VectorField& f) { return leray_project(f); }

VectorField duhamel_evolve(const EvolutionSpec& spec, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("duhamel_evolve: time must be non-negative");
    VectorField out = heat_propagate(spec.initial(), spec.fluid(), t);

    if (spec.has_force() && t > 0.0) {
        const Grid& g = spec.initial().grid();
        auto& ws = workspace_for(g);
        const int dim = g.dim();
        const int panels = spec.quadrature().panels_for(t);
        const int nodes = 2 * panels;
        const double h = t / nodes;
        const double kappa = spec.fluid().kappa;

        std::vector<Spectrum> acc(dim, Spectrum(ws.modes()));
        for (int j = 0; j <= nodes; ++j) {
            const double tau = j * h;
            const double weight = h / 3.0 * ((j == 0 || j == nodes) ? 1.0 : (j % 2 ? 4.0 : 2.0));
            const VectorField projected = project_force(spec.force_at(tau));
            for (int c = 0; c < dim; ++c) {
                const auto fhat = ws.forward(projected[c].values());
                for (std::size_t m = 0; m < ws.modes(); ++m)
                    acc[c][m] += weight * std::exp(-kappa * ws.k_squared(m) * (t - tau)) * fhat[m];
            }
        }
        for (int c = 0; c < dim; ++c) out[c] += ScalarField(g, ws.inverse(acc[c]));
    }

    if (spec.drift()) {
        for (int c = 0; c < out.dim(); ++c) {
            const double shift = (*spec.drift())[c].weighted_integral(0.0, t);
            for (double& v : out[c].values()) v += shift;
        }
    }
    return out;
}

}  // namespace nsv
