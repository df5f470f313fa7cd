#include "nsverify/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "nsverify/solutions.hpp"
#include "nsverify/text.hpp"

namespace nsv::cli {

namespace {

const std::vector<std::string> kPhysics = {"family", "grid", "kappa", "rho", "abc", "forcing", "times", "out"};

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<const char*> extra) {
    for (const char* key : extra) base.emplace_back(key);
    return base;
}

bool contains(const std::vector<std::string>& keys, const std::string& key) {
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string text_of(const Json& value, const std::string& key) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer() || value.is_number_unsigned()) return std::to_string(value.get<long long>());
    if (value.is_number_float()) return format_shortest(value.get<double>());
    if (value.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (i) out += ",";
            out += text_of(value[i], key);
        }
        return out;
    }
    throw std::invalid_argument("config key '" + key + "' must be a string, number or array");
}

double parse_number(const RawOptions& raw, const std::string& key, double fallback) {
    const auto it = raw.find(key);
    if (it == raw.end()) return fallback;
    try {
        return parse_double(it->second);
    } catch (const std::exception&) {
        throw std::invalid_argument("--" + key + ": expected a number, got '" + it->second + "'");
    }
}

std::vector<double> parse_numbers(const RawOptions& raw, const std::string& key, std::vector<double> fallback) {
    const auto it = raw.find(key);
    if (it == raw.end()) return fallback;
    try {
        auto values = parse_double_list(it->second);
        if (values.empty()) throw std::invalid_argument("empty");
        return values;
    } catch (const std::exception&) {
        throw std::invalid_argument("--" + key + ": expected a comma-separated list of numbers, got '" +
                                    it->second + "'");
    }
}

std::vector<int> parse_ints(const RawOptions& raw, const std::string& key, std::vector<int> fallback) {
    std::vector<int> out;
    for (double v : parse_numbers(raw, key, std::vector<double>(fallback.begin(), fallback.end()))) {
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw std::invalid_argument("--" + key + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string parse_choice(const RawOptions& raw, const std::string& key, const std::string& fallback,
                         const std::vector<std::string>& choices) {
    const auto it = raw.find(key);
    if (it == raw.end()) return fallback;
    if (!contains(choices, it->second)) {
        std::string list;
        for (const auto& c : choices) list += (list.empty() ? "" : "|") + c;
        throw std::invalid_argument("--" + key + ": expected " + list + ", got '" + it->second + "'");
    }
    return it->second;
}

std::vector<FamilyTag> parse_families(const RawOptions& raw) {
    const auto it = raw.find("family");
    if (it == raw.end())
        return {FamilyTag::TaylorVortex2D, FamilyTag::ForcedTaylorVortex2D, FamilyTag::ABCFlow3D,
                FamilyTag::ForcedABCFlow3D};
    std::vector<FamilyTag> out;
    for (const auto& name : split(it->second, ',')) {
        if (name == "all") {
            for (FamilyTag tag : kAllFamilies)
                if (std::find(out.begin(), out.end(), tag) == out.end()) out.push_back(tag);
            continue;
        }
        const FamilyTag tag = parse_family_tag(name);
        if (std::find(out.begin(), out.end(), tag) == out.end()) out.push_back(tag);
    }
    if (out.empty()) throw std::invalid_argument("--family: no family given");
    return out;
}

}  // namespace

const std::vector<std::string>& known_keys(const std::string& command) {
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"list", {}},
        {"verify", with(kPhysics, {"corrupt-velocity"})},
        {"sample", with(kPhysics, {"format"})},
        {"evolve", with(kPhysics, {"panels", "format"})},
        {"convergence", {"grid", "kappa", "panels", "backend", "operator", "out"}},
    };
    const auto it = keys.find(command);
    if (it == keys.end()) throw std::invalid_argument("unknown command '" + command + "'");
    return it->second;
}

RawOptions raw_options_from_json(const Json& doc, const std::string& command) {
    if (!doc.is_object()) throw std::invalid_argument("config document must be a JSON object");
    const Json* source = &doc;
    if (doc.contains("schema") && doc.contains("config")) source = &doc.at("config");
    const auto& keys = known_keys(command);
    RawOptions raw;
    for (const auto& [key, value] : source->items()) {
        if (!contains(keys, key)) throw std::invalid_argument("unknown config key '" + key + "' for " + command);
        raw[key] = text_of(value, key);
    }
    return raw;
}

RawOptions load_config_file(const std::filesystem::path& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return raw_options_from_json(doc, command);
}

RunConfig resolve(const std::string& command, const RawOptions& raw) {
    const auto& keys = known_keys(command);
    for (const auto& [key, value] : raw)
        if (!contains(keys, key)) throw std::invalid_argument("option --" + key + " does not apply to " + command);

    RunConfig c;
    c.command = command;
    if (command == "list") return c;

    const bool study = command == "convergence";
    if (!study) c.families = parse_families(raw);
    c.grid = parse_ints(raw, "grid", study ? std::vector<int>{16, 32, 64} : std::vector<int>{32});
    for (int n : c.grid)
        if (n < 4 || n % 2 != 0) throw std::invalid_argument("--grid: resolutions must be even and >= 4");
    if (!study && c.grid.size() != 1) throw std::invalid_argument("--grid: " + command + " takes one resolution");

    c.kappa = parse_number(raw, "kappa", c.kappa);
    c.rho = parse_number(raw, "rho", c.rho);
    if (!(c.kappa > 0.0) || !std::isfinite(c.kappa)) throw std::invalid_argument("--kappa must be positive");
    if (!(c.rho > 0.0) || !std::isfinite(c.rho)) throw std::invalid_argument("--rho must be positive");

    const auto abc = parse_numbers(raw, "abc", {c.abc.a, c.abc.b, c.abc.c});
    if (abc.size() != 3) throw std::invalid_argument("--abc takes three numbers a,b,c");
    c.abc = {abc[0], abc[1], abc[2]};

    if (const auto it = raw.find("forcing"); it != raw.end()) c.forcing = it->second;
    c.times = parse_numbers(raw, "times", c.times);
    for (double t : c.times)
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("--times must be non-negative");

    c.panels = parse_ints(raw, "panels", study ? std::vector<int>{16, 32, 64} : std::vector<int>{});
    for (int p : c.panels)
        if (p < 1) throw std::invalid_argument("--panels must be positive");
    if (command == "evolve" && c.panels.size() > 1) throw std::invalid_argument("--panels: evolve takes one count");

    c.backend = parse_backend(parse_choice(raw, "backend", "spectral", {"spectral", "fd"}));
    c.op = parse_choice(raw, "operator", c.op, {"gradient", "laplacian", "duhamel"});
    c.format = parse_choice(raw, "format", c.format, {"vtk", "csv", "both"});
    if (const auto it = raw.find("out"); it != raw.end()) c.out = it->second;
    c.corrupt_velocity = parse_number(raw, "corrupt-velocity", 1.0);

    if (study) {
        if (c.op == "duhamel" ? c.panels.size() < 3 : c.grid.size() < 3)
            throw std::invalid_argument("a convergence study needs at least three resolutions");
    } else {
        // surface forcing errors before any work starts
        for (FamilyTag tag : c.families) (void)build_family(tag, c);
    }
    return c;
}

Json to_json(const RunConfig& c) {
    Json j = Json::object();
    const auto& keys = known_keys(c.command);
    auto want = [&](const char* key) { return contains(keys, key); };
    if (want("family")) {
        Json names = Json::array();
        for (FamilyTag tag : c.families) names.push_back(std::string(to_string(tag)));
        j["family"] = names;
    }
    if (want("grid")) {
        if (c.grid.size() == 1)
            j["grid"] = c.grid.front();
        else
            j["grid"] = c.grid;
    }
    if (want("kappa")) j["kappa"] = c.kappa;
    if (want("rho")) j["rho"] = c.rho;
    if (want("abc")) j["abc"] = {c.abc.a, c.abc.b, c.abc.c};
    if (want("forcing")) j["forcing"] = c.forcing;
    if (want("times")) j["times"] = c.times;
    if (want("panels") && !c.panels.empty()) j["panels"] = c.panels;
    if (want("backend")) j["backend"] = std::string(to_string(c.backend));
    if (want("operator")) j["operator"] = c.op;
    if (want("format")) j["format"] = c.format;
    if (want("out")) j["out"] = c.out;
    if (want("corrupt-velocity") && c.corrupt_velocity != 1.0) j["corrupt-velocity"] = c.corrupt_velocity;
    return j;
}

SolutionFamily build_family(FamilyTag tag, const RunConfig& c) {
    const bool matched = c.forcing == "matched";
    const double rate = metadata(tag).decay_rate * c.kappa;
    auto profile = [&] { return matched ? TimeProfile::exponential(1.0, rate) : TimeProfile::parse(c.forcing); };
    switch (tag) {
        case FamilyTag::TaylorVortex2D: return TaylorVortex2D{};
        case FamilyTag::ForcedTaylorVortex2D: return ForcedTaylorVortex2D{profile()};
        case FamilyTag::ABCFlow3D: return ABCFlow3D{c.abc};
        case FamilyTag::ForcedABCFlow3D: return ForcedABCFlow3D{c.abc, profile()};
        case FamilyTag::ABCExpForced3D: {
            if (matched) return ABCExpForced3D{c.abc, 1.0, 1.0};
            const TimeProfile p = TimeProfile::parse(c.forcing);
            if (p.is_zero()) return ABCExpForced3D{c.abc, 0.0, 1.0};
            if (const auto* e = std::get_if<TimeProfile::Exponential>(&p.kind()))
                return ABCExpForced3D{c.abc, e->amplitude, e->lambda};
            if (const auto* k = std::get_if<TimeProfile::Constant>(&p.kind()))
                return ABCExpForced3D{c.abc, k->value, 0.0};
            throw std::invalid_argument("--forcing: ABCExpForced3D takes zero, const:f_I or exp:f_I,lambda");
        }
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace nsv::cli
