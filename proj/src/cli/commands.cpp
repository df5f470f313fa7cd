#include "nsverify/cli/commands.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

#include "nsverify/cli/export.hpp"
#include "nsverify/cli/report_json.hpp"
#include "nsverify/evolution.hpp"
#include "nsverify/solutions.hpp"
#include "nsverify/text.hpp"
#include "nsverify/verify.hpp"

namespace nsv::cli {

namespace {

std::string short_name(Claim claim) {
    switch (claim) {
        case Claim::umbilical_zero: return "umbilical";
        case Claim::satisfies_momentum: return "momentum";
        case Claim::divergence_free: return "divergence";
        case Claim::pressure_matches_ppe: return "ppe";
        case Claim::energy_decay: return "energy";
    }
    return "?";
}

std::filesystem::path output_path(const RunConfig& c, const std::string& name) {
    return std::filesystem::path(c.out) / name;
}

std::string scientific(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << v;
    return s.str();
}

void export_fields(const RunConfig& c, const FieldBundle& fields, const std::string& stem, const std::string& title,
                   std::ostream& out) {
    if (c.format == "vtk" || c.format == "both") {
        const auto path = output_path(c, stem + ".vtk");
        write_text(path, to_vtk(fields, title));
        out << "wrote " << path.string() << "\n";
    }
    if (c.format == "csv" || c.format == "both") {
        const auto path = output_path(c, stem + ".csv");
        write_text(path, to_csv(fields));
        out << "wrote " << path.string() << "\n";
    }
}

}  // namespace

int cmd_list(std::ostream& out) {
    out << std::left << std::setw(22) << "family" << std::setw(5) << "dim" << std::setw(8) << "decay"
        << std::setw(22) << "parameters" << "claims\n";
    for (const auto& m : registry()) {
        std::string claims;
        for (const auto& e : m.paper_claims)
            claims += (claims.empty() ? "" : ", ") + short_name(e.claim) + ": " + std::string(to_string(e.status));
        const std::string decay = m.tag == FamilyTag::TaylorVortex2D || m.tag == FamilyTag::ForcedTaylorVortex2D
                                      ? "2π²κ"
                                      : "π²κ";
        // setw counts bytes; pad the multi-byte decay column by hand
        out << std::setw(22) << to_string(m.tag) << std::setw(5) << family_dim(m.tag) << decay
            << std::string(8 - (decay == "2π²κ" ? 4 : 3), ' ') << std::setw(22) << m.parameters << claims << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const FluidParams fluid = c.fluid();
    VerifyOptions options;
    options.residual.velocity_scale = c.corrupt_velocity;
    std::vector<ResidualReport> reports;
    for (FamilyTag tag : c.families) {
        const SolutionFamily family = build_family(tag, c);
        const Grid grid = Grid::cube(family_dim(tag), c.grid.front());
        reports.push_back(verify_family(family, fluid, grid, c.times, options));
        const auto& r = reports.back();
        out << r.family << " on " << r.grid << "\n";
        for (const auto& v : r.verdicts)
            out << "  " << std::left << std::setw(12) << short_name(v.claim) << std::setw(28) << to_string(v.verdict)
                << "measured " << scientific(v.measured) << "  tolerance " << scientific(v.tolerance) << "\n";
        if (r.prediction)
            out << "  prediction  " << (r.prediction->agrees ? "agrees" : "DISAGREES") << "  max mismatch "
                << scientific(std::max(r.prediction->max_umbilical_mismatch, r.prediction->max_momentum_mismatch))
                << "\n";
    }
    const int code = exit_code(reports);
    Json doc = report_header(c);
    doc["exit_code"] = code;
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    doc["reports"] = list;
    const auto path = output_path(c, "verify_report.json");
    write_text(path, dump(doc));
    out << "wrote " << path.string() << " (exit " << code << ")\n";
    return code;
}

int cmd_sample(const RunConfig& c, std::ostream& out) {
    const FluidParams fluid = c.fluid();
    for (FamilyTag tag : c.families) {
        const SolutionFamily family = build_family(tag, c);
        const Grid grid = Grid::cube(family_dim(tag), c.grid.front());
        for (double t : c.times) {
            auto s = sample(family, fluid, grid, t);
            const std::string stem = std::string(to_string(tag)) + "_t" + format_shortest(t);
            export_fields(c, {std::move(s.velocity), std::move(s.pressure), std::move(s.force)}, stem,
                          describe(family) + " t=" + format_shortest(t), out);
        }
    }
    return 0;
}

int cmd_evolve(const RunConfig& c, std::ostream& out) {
    const FluidParams fluid = c.fluid();
    TimeQuadrature quadrature;
    if (!c.panels.empty()) quadrature.panels = c.panels.front();
    Json doc = report_header(c);
    Json list = Json::array();
    for (FamilyTag tag : c.families) {
        const SolutionFamily family = build_family(tag, c);
        const Grid grid = Grid::cube(family_dim(tag), c.grid.front());
        const EvolutionSpec spec = family_evolution(family, fluid, grid, quadrature);
        std::vector<int> panels;
        std::vector<double> diffs;
        for (double t : c.times) {
            VectorField v = duhamel_evolve(spec, t);
            VectorField f = sample_force(family, grid, t);
            const double diff = sup_norm(v - sample_velocity(family, fluid, grid, t));
            panels.push_back(quadrature.panels_for(t));
            diffs.push_back(diff);
            out << describe(family) << " t=" << format_shortest(t) << "  |evolved - closed form| = " << scientific(diff)
                << "\n";
            ScalarField p = pressure_from_fields(v, f, fluid);
            export_fields(c, {std::move(v), std::move(p), std::move(f)},
                          std::string(to_string(tag)) + "_evolved_t" + format_shortest(t),
                          describe(family) + " evolved t=" + format_shortest(t), out);
        }
        list.push_back({{"family", std::string(to_string(tag))},
                        {"instance", describe(family)},
                        {"grid", grid.summary()},
                        {"times", c.times},
                        {"panels", panels},
                        {"sup_diff_vs_closed_form", diffs}});
    }
    doc["evolutions"] = list;
    const auto path = output_path(c, "evolve_report.json");
    write_text(path, dump(doc));
    out << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_convergence(const RunConfig& c, std::ostream& out) {
    const ConvergenceKind kind = convergence_kind(c.op, c.backend);
    FieldSpec spec;
    spec.kappa = c.kappa;
    spec.duhamel_grid = c.grid.front();
    const auto& resolutions = kind == ConvergenceKind::duhamel_panels ? c.panels : c.grid;
    const ConvergenceStudy study = convergence_study(kind, spec, resolutions);

    std::string csv = "kind,n,error,fitted_order\n";
    for (const auto& p : study.points)
        csv += std::string(to_string(kind)) + "," + std::to_string(p.n) + "," + format_17g(p.error) + "," +
               format_17g(study.fitted_order) + "\n";
    out << csv;
    write_text(output_path(c, "convergence.csv"), csv);
    Json doc = report_header(c);
    doc["study"] = to_json(study);
    write_text(output_path(c, "convergence_report.json"), dump(doc));
    return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification harness for closed-form Navier-Stokes solutions", "ns-verify"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* app;
        std::map<std::string, std::string> values;
        std::string config;
    };
    std::map<std::string, Sub> subs;
    const std::map<std::string, std::string> help = {
        {"family", "families: comma list of names, or all"},
        {"grid", "nodes per axis (comma list for convergence)"},
        {"kappa", "kinematic viscosity"},
        {"rho", "density"},
        {"abc", "ABC coefficients a,b,c"},
        {"forcing", "matched | zero | const:c | exp:f,lambda | table:t=g;..."},
        {"times", "comma list of times"},
        {"panels", "Simpson panels (comma list for convergence)"},
        {"backend", "spectral | fd"},
        {"out", "output directory"},
        {"format", "vtk | csv | both"},
        {"operator", "gradient | laplacian | duhamel"},
        {"corrupt-velocity", "scale the velocity in the momentum residual"},
    };
    const std::map<std::string, std::string> descriptions = {
        {"list", "list the solution families and their claims"},
        {"verify", "run the residual suite and write verify_report.json"},
        {"sample", "export velocity, pressure and force fields"},
        {"evolve", "run the Duhamel evolution and compare with the closed form"},
        {"convergence", "grid or panel refinement study"},
    };
    for (const char* name : {"list", "verify", "sample", "evolve", "convergence"}) {
        Sub& sub = subs[name];
        sub.app = app.add_subcommand(name, descriptions.at(name));
        for (const auto& key : known_keys(name)) {
            auto* opt = sub.app->add_option("--" + key, sub.values[key], help.at(key));
            if (key == "corrupt-velocity") opt->group("");
        }
        if (!known_keys(name).empty())
            sub.app->add_option("--config", sub.config, "JSON config file; keys are flag names, flags override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        for (auto& [name, sub] : subs) {
            if (!sub.app->parsed()) continue;
            if (name == "list") return cmd_list(out);
            RawOptions raw;
            if (!sub.config.empty()) raw = load_config_file(sub.config, name);
            for (const auto& [key, value] : sub.values)
                if (sub.app->get_option("--" + key)->count() > 0) raw[key] = value;
            const RunConfig config = resolve(name, raw);
            if (name == "verify") return cmd_verify(config, out);
            if (name == "sample") return cmd_sample(config, out);
            if (name == "evolve") return cmd_evolve(config, out);
            return cmd_convergence(config, out);
        }
    } catch (const std::exception& e) {
        err << "ns-verify: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace nsv::cli
