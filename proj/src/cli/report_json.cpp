#include "nsverify/cli/report_json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <string>

#include "nsverify/text.hpp"

namespace nsv::cli {

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(std::string& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_17g(v) : "null";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
            out += "[";
            bool first = true;
            for (const auto& item : j) {
                out += first ? "" : ",";
                out += flat ? (first ? "" : " ") : "\n" + inner;
                write(out, item, indent + 1);
                first = false;
            }
            out += flat ? "]" : "\n" + pad + "]";
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                out += first ? "\n" : ",\n";
                out += inner + Json(key).dump() + ": ";
                write(out, value, indent + 1);
                first = false;
            }
            out += "\n" + pad + "}";
            return;
        }
        default: out += j.dump(); return;
    }
}

Json tolerances_json(const Tolerances& t) {
    return {{"momentum", t.momentum},     {"divergence", t.divergence}, {"umbilical", t.umbilical},
            {"ppe", t.ppe},               {"inertial", t.inertial},     {"energy_relative", t.energy_relative},
            {"initial", t.initial},       {"prediction", t.prediction}};
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::atoll(epoch));
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

}  // namespace

std::string dump(const Json& doc) {
    std::string out;
    write(out, doc, 0);
    out += "\n";
    return out;
}

Json report_header(const RunConfig& config) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = config.command;
    j["generated"] = timestamp();
    j["config"] = to_json(config);
    return j;
}

Json to_json(const ResidualReport& r) {
    Json j;
    j["family"] = std::string(to_string(r.tag));
    j["instance"] = r.family;
    j["grid"] = r.grid;
    j["kappa"] = r.kappa;
    j["rho"] = r.rho;
    j["times"] = r.times;
    j["initial_condition_err"] = r.initial_condition_err;
    Json norms = Json::array();
    for (const auto& n : r.norms) {
        Json e;
        e["t"] = n.t;
        e["momentum_sup"] = n.momentum_sup;
        e["momentum_l2"] = n.momentum_l2;
        e["divergence_sup"] = n.divergence_sup;
        e["umbilical_sup"] = n.umbilical_sup;
        e["ppe_pressure_sup_err"] = n.ppe_pressure_sup_err;
        if (n.inertial_closed_form_sup_err) e["inertial_closed_form_sup_err"] = *n.inertial_closed_form_sup_err;
        e["inertial_curl_sup"] = n.inertial_curl_sup;
        norms.push_back(e);
    }
    j["norms"] = norms;
    Json energy = Json::array();
    for (const auto& [t, e] : r.energy_series) energy.push_back({t, e});
    j["energy_series"] = energy;
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts) {
        verdicts.push_back({{"claim", std::string(to_string(v.claim))},
                            {"status", std::string(to_string(v.status))},
                            {"verdict", std::string(to_string(v.verdict))},
                            {"measured", v.measured},
                            {"tolerance", v.tolerance}});
    }
    j["verdicts"] = verdicts;
    if (r.prediction) {
        const auto& p = *r.prediction;
        j["prediction"] = {{"times", p.times},
                           {"umbilical_predicted_sup", p.umbilical_predicted},
                           {"momentum_predicted_sup", p.momentum_predicted},
                           {"max_umbilical_mismatch", p.max_umbilical_mismatch},
                           {"max_momentum_mismatch", p.max_momentum_mismatch},
                           {"agrees", p.agrees}};
    }
    j["tolerances"] = tolerances_json(r.tolerances);
    j["notes"] = r.notes;
    return j;
}

Json to_json(const ConvergenceStudy& study) {
    Json points = Json::array();
    for (const auto& p : study.points) points.push_back({{"n", p.n}, {"error", p.error}});
    return {{"kind", std::string(to_string(study.kind))}, {"points", points}, {"fitted_order", study.fitted_order}};
}

}  // namespace nsv::cli
