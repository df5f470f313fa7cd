#include "nsverify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nsverify/evolution.hpp"
#include "nsverify/parallel.hpp"

namespace nsv {

namespace {

constexpr double pi = std::numbers::pi;

struct TimeFields {
    VectorField velocity;
    VectorField velocity_dt;
    ScalarField pressure;
    VectorField force;
};

TimeFields sample_all(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t,
                      double scale) {
    if (!(t >= 0.0)) throw std::invalid_argument("verification times must be non-negative");
    auto s = sample(family, fluid, grid, t);
    VectorField dvdt = sample_velocity_dt(family, fluid, grid, t);
    if (scale != 1.0) {
        s.velocity *= scale;
        dvdt *= scale;
    }
    return {std::move(s.velocity), std::move(dvdt), std::move(s.pressure), std::move(s.force)};
}

VectorField residual_of(const TimeFields& f, const FluidParams& fluid) {
    VectorField r = f.velocity_dt + advection(f.velocity);
    r += (1.0 / fluid.rho) * gradient(f.pressure);
    r -= fluid.kappa * laplacian(f.velocity);
    r -= f.force;
    return r;
}

double ppe_mismatch(const TimeFields& f, const FluidParams& fluid) {
    const ScalarField reconstructed = pressure_from_fields(f.velocity, f.force, fluid);
    ScalarField exact = f.pressure;
    const double m = mean(exact);
    for (double& v : exact.values()) v -= m;
    return sup_norm(reconstructed - exact);
}

double energy_of(const VectorField& v) {
    double sum = 0.0;
    for (int c = 0; c < v.dim(); ++c)
        for (double x : v[c].values()) sum += x * x;
    return sum * v.grid().cell_volume();
}

/// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den == 0.0) throw std::invalid_argument("slope fit needs at least two distinct abscissae");
    return num / den;
}

}  // namespace

VectorField momentum_residual(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t,
                              ResidualOptions options) {
    return residual_of(sample_all(family, fluid, grid, t, options.velocity_scale), fluid);
}

ScalarField divergence_residual(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    return divergence(sample_velocity(family, fluid, grid, t));
}

double initial_condition_check(const SolutionFamily& family, const Grid& grid) {
    // any fluid parameters will do: every family reduces to v0 at t = 0
    const FluidParams fluid(0.02, 1.0);
    return sup_norm(sample_velocity(family, fluid, grid, 0.0) - sample_initial_velocity(family, grid));
}

double cell_energy(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    return energy_of(sample_velocity(family, fluid, grid, t));
}

std::vector<std::pair<double, double>> umbilical_audit(const SolutionFamily& family, const FluidParams& fluid,
                                                       const Grid& grid, const std::vector<double>& times) {
    std::vector<std::pair<double, double>> out(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        out[i] = {times[i], sup_norm(umbilical_force(sample_velocity(family, fluid, grid, times[i])))};
    });
    return out;
}

double ppe_consistency(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    return ppe_mismatch(sample_all(family, fluid, grid, t, 1.0), fluid);
}

EvolutionSpec family_evolution(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                               TimeQuadrature quadrature) {
    ForceSource force;
    std::optional<std::vector<TimeProfile>> drift;
    if (const auto* p3 = std::get_if<ABCExpForced3D>(&family)) {
        // the force is spatially uniform: its projection is itself and it
        // integrates in closed form
        drift = std::vector<TimeProfile>{TimeProfile::exponential(p3->f_i, p3->lambda), TimeProfile::zero(),
                                         TimeProfile::zero()};
    } else if (std::holds_alternative<ForcedTaylorVortex2D>(family) ||
               std::holds_alternative<ForcedABCFlow3D>(family)) {
        force = family;
    }
    return EvolutionSpec(fluid, sample_initial_velocity(family, grid), force, drift, quadrature);
}

double evolve_vs_closed_form(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t,
                             int panels) {
    if (panels < 1) throw std::invalid_argument("evolve_vs_closed_form needs at least one panel");
    TimeQuadrature quadrature;
    quadrature.panels = panels;
    const EvolutionSpec spec = family_evolution(family, fluid, grid, quadrature);
    return sup_norm(duhamel_evolve(spec, t) - sample_velocity(family, fluid, grid, t));
}

double inertial_curl_sup(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    return sup_norm(curl(advection(sample_velocity(family, fluid, grid, t))));
}

double fitted_decay_rate(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                         const std::vector<double>& times) {
    std::vector<double> logs(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        logs[i] = std::log(sup_norm(sample_velocity(family, fluid, grid, times[i])));
    });
    return -slope(times, logs);
}

VectorField predicted_residual(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t) {
    const auto* p3 = std::get_if<ABCExpForced3D>(&family);
    if (!p3) return VectorField(grid);
    const auto state = time_state(family, fluid, t);
    const double scale = state.drift * state.amplitude * pi * p3->abc.b;
    return VectorField::from_function(grid, [&](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.0, scale * std::cos(pi * x[0]), scale * std::sin(pi * x[0])};
    });
}

// ---------------------------------------------------------------------------

std::string_view to_string(ConvergenceKind kind) {
    switch (kind) {
        case ConvergenceKind::fd_gradient: return "fd_gradient";
        case ConvergenceKind::fd_laplacian: return "fd_laplacian";
        case ConvergenceKind::spectral_gradient: return "spectral_gradient";
        case ConvergenceKind::spectral_laplacian: return "spectral_laplacian";
        case ConvergenceKind::duhamel_panels: return "duhamel_panels";
    }
    return "unknown";
}

ConvergenceKind convergence_kind(std::string_view op, Backend backend) {
    const bool fd = backend == Backend::finite_difference;
    if (op == "gradient") return fd ? ConvergenceKind::fd_gradient : ConvergenceKind::spectral_gradient;
    if (op == "laplacian") return fd ? ConvergenceKind::fd_laplacian : ConvergenceKind::spectral_laplacian;
    if (op == "duhamel") return ConvergenceKind::duhamel_panels;
    throw std::invalid_argument("unknown convergence operator '" + std::string(op) +
                                "' (expected gradient, laplacian or duhamel)");
}

double fitted_order(const std::vector<ConvergencePoint>& points) {
    std::vector<double> x, y;
    for (const auto& p : points) {
        x.push_back(-std::log(static_cast<double>(p.n)));
        y.push_back(std::log(p.error));
    }
    return slope(x, y);
}

namespace {

double operator_error(ConvergenceKind kind, const FieldSpec& spec, int n) {
    const Grid grid = Grid::cube(spec.dim, n);
    const double k = spec.mode * pi;
    const auto field = ScalarField::from_function(grid, [&](const auto& x) { return std::sin(k * x[0]); });
    const Backend backend = (kind == ConvergenceKind::fd_gradient || kind == ConvergenceKind::fd_laplacian)
                                ? Backend::finite_difference
                                : Backend::spectral;
    if (kind == ConvergenceKind::fd_gradient || kind == ConvergenceKind::spectral_gradient) {
        const auto exact = VectorField::from_function(grid, [&](const auto& x) {
            return std::array<double, 3>{k * std::cos(k * x[0]), 0.0, 0.0};
        });
        return sup_norm(gradient(field, backend) - exact);
    }
    return sup_norm(laplacian(field, backend) + (k * k) * field);
}

}  // namespace

ConvergenceStudy convergence_study(ConvergenceKind kind, const FieldSpec& spec, const std::vector<int>& resolutions) {
    if (resolutions.size() < 3) throw std::invalid_argument("a convergence study needs at least three resolutions");
    for (int n : resolutions)
        if (n < 4 || (kind != ConvergenceKind::duhamel_panels && n % 2 != 0))
            throw std::invalid_argument("convergence resolutions must be even and >= 4");
    ConvergenceStudy study{kind, std::vector<ConvergencePoint>(resolutions.size()), 0.0};
    if (kind == ConvergenceKind::duhamel_panels) {
        const FluidParams fluid(spec.kappa, 1.0);
        const SolutionFamily family = ForcedTaylorVortex2D{TimeProfile::constant(spec.forcing)};
        const Grid grid = Grid::cube(2, spec.duhamel_grid);
        parallel_for(resolutions.size(), [&](std::size_t i) {
            study.points[i] = {resolutions[i], evolve_vs_closed_form(family, fluid, grid, spec.horizon, resolutions[i])};
        });
    } else {
        parallel_for(resolutions.size(), [&](std::size_t i) {
            study.points[i] = {resolutions[i], operator_error(kind, spec, resolutions[i])};
        });
    }
    study.fitted_order = fitted_order(study.points);
    return study;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::measured_contradicts_paper: return "measured-contradicts-paper";
    }
    return "unknown";
}

namespace {

struct TimeResult {
    TimeNorms norms;
    double energy;
    double umbilical_mismatch = 0.0;
    double momentum_mismatch = 0.0;
    double predicted_sup = 0.0;
};

TimeResult evaluate_at(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid, double t,
                       const VerifyOptions& options, bool closed_inertial) {
    const TimeFields raw = sample_all(family, fluid, grid, t, 1.0);
    const TimeFields scaled = options.residual.velocity_scale == 1.0
                                  ? raw
                                  : sample_all(family, fluid, grid, t, options.residual.velocity_scale);
    const VectorField residual = residual_of(scaled, fluid);
    const VectorField inertial = advection(raw.velocity);
    const VectorField umbilical = leray_project(inertial);

    TimeResult out{};
    out.norms.t = t;
    out.norms.momentum_sup = sup_norm(residual);
    out.norms.momentum_l2 = l2_norm(residual);
    out.norms.divergence_sup = sup_norm(divergence(raw.velocity));
    out.norms.umbilical_sup = sup_norm(umbilical);
    out.norms.ppe_pressure_sup_err = ppe_mismatch(raw, fluid);
    if (closed_inertial)
        out.norms.inertial_closed_form_sup_err =
            sup_norm(inertial - sample_inertial_closed_form(family, fluid, grid, t));
    out.norms.inertial_curl_sup = sup_norm(curl(inertial));
    out.energy = energy_of(raw.velocity);

    if (std::holds_alternative<ABCExpForced3D>(family)) {
        const VectorField predicted = predicted_residual(family, fluid, grid, t);
        out.predicted_sup = sup_norm(predicted);
        out.umbilical_mismatch = sup_norm(umbilical - predicted);
        out.momentum_mismatch = sup_norm(residual - predicted);
    }
    return out;
}

Verdict judge(double measured, double tolerance, ClaimStatus status) {
    if (measured <= tolerance) return Verdict::pass;
    return status == ClaimStatus::expected_pass ? Verdict::fail : Verdict::measured_contradicts_paper;
}

}  // namespace

ResidualReport verify_family(const SolutionFamily& family, const FluidParams& fluid, const Grid& grid,
                             const std::vector<double>& times, const VerifyOptions& options) {
    if (times.empty()) throw std::invalid_argument("verify_family needs at least one time");
    const FamilyTag tag = family_tag(family);
    const FamilyMetadata& meta = metadata(tag);
    const Tolerances& tol = options.tolerances;

    std::vector<TimeResult> results(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        results[i] = evaluate_at(family, fluid, grid, times[i], options, meta.has_closed_inertial);
    });

    ResidualReport report;
    report.tag = tag;
    report.family = describe(family);
    report.grid = grid.summary();
    report.kappa = fluid.kappa;
    report.rho = fluid.rho;
    report.times = times;
    report.tolerances = tol;
    report.initial_condition_err = initial_condition_check(family, grid);
    for (const auto& r : results) {
        report.norms.push_back(r.norms);
        report.energy_series.emplace_back(r.norms.t, r.energy);
    }

    auto worst = [&](auto member) {
        double m = 0.0;
        for (const auto& r : results) m = std::max(m, r.norms.*member);
        return m;
    };

    for (const ClaimEntry& entry : meta.paper_claims) {
        double measured = 0.0, tolerance = 0.0;
        switch (entry.claim) {
            case Claim::umbilical_zero:
                measured = worst(&TimeNorms::umbilical_sup);
                tolerance = tol.umbilical;
                break;
            case Claim::satisfies_momentum:
                measured = worst(&TimeNorms::momentum_sup);
                tolerance = tol.momentum;
                break;
            case Claim::divergence_free:
                measured = worst(&TimeNorms::divergence_sup);
                tolerance = tol.divergence;
                break;
            case Claim::pressure_matches_ppe:
                measured = worst(&TimeNorms::ppe_pressure_sup_err);
                tolerance = tol.ppe;
                break;
            case Claim::energy_decay: {
                // relative error of E(t) against E(0) exp(-2 r t), plus any growth
                const double rate = decay_rate(tag, fluid);
                const double e0 = cell_energy(family, fluid, grid, 0.0);
                tolerance = tol.energy_relative;
                double previous = e0;
                for (const auto& [t, e] : report.energy_series) {
                    const double expected = e0 * std::exp(-2.0 * rate * t);
                    measured = std::max(measured, std::abs(e - expected) / expected);
                    if (e > previous) measured = std::max(measured, e / previous - 1.0);
                    previous = e;
                }
                break;
            }
        }
        report.verdicts.push_back({entry.claim, entry.status, judge(measured, tolerance, entry.status), measured,
                                   tolerance});
    }

    if (std::holds_alternative<ABCExpForced3D>(family)) {
        PredictionCheck check;
        check.times = times;
        check.max_umbilical_mismatch = 0.0;
        check.max_momentum_mismatch = 0.0;
        for (const auto& r : results) {
            check.umbilical_predicted.push_back(r.predicted_sup);
            check.momentum_predicted.push_back(r.predicted_sup);
            check.max_umbilical_mismatch = std::max(check.max_umbilical_mismatch, r.umbilical_mismatch);
            check.max_momentum_mismatch = std::max(check.max_momentum_mismatch, r.momentum_mismatch);
        }
        check.agrees = check.max_umbilical_mismatch <= tol.prediction && check.max_momentum_mismatch <= tol.prediction;
        report.prediction = std::move(check);
        report.notes.push_back(
            "predicted residual = pi b h(t) exp(-pi^2 kappa t) (0, cos pi x1, sin pi x1), the advection of the "
            "ABC field by the uniform stream h(t) e1");
    }
    if (meta.status_of(Claim::energy_decay))
        report.notes.push_back("energy is integrated over one periodic cell; the whole-space energy is infinite "
                               "for periodic flows");
    return report;
}

int exit_code(const std::vector<ResidualReport>& reports) {
    bool contradicted = false;
    for (const auto& report : reports) {
        if (report.initial_condition_err > report.tolerances.initial) return 2;
        if (report.prediction && !report.prediction->agrees) return 2;
        for (const auto& v : report.verdicts) {
            if (v.verdict == Verdict::fail) return 2;
            if (v.verdict == Verdict::measured_contradicts_paper) contradicted = true;
        }
    }
    return contradicted ? 3 : 0;
}

}  // namespace nsv
