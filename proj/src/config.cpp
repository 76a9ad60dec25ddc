#include "bsl/config.hpp"
#include "bsl/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace bsl {

using json = nlohmann::json;

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t = {
        {"geometry", 1e-12},   {"pairing", 1e-10},     {"even_corner", 1e-8},  {"markov", 1e-10},
        {"baker", 1e-12},      {"conjugacy", 1e-10},   {"involution", 1e-10},  {"duality", 1e-10},
        {"lebesgue", 1e-8},    {"conjugation", 1e-10}, {"n_stability", 1e-8},  {"t_stability", 1e-6},
        {"eigen_residual", 1e-6}, {"kernel_transfer", 1e-4}, {"noise_floor", 1e-10}, {"laplace", 1e-3},
        {"automorphy", 1e-2},  {"equivariance", 1e-2}, {"roundtrip", 0.1},     {"parts", 1e-8},
    };
    return t;
}

double RunConfig::tol(const std::string& name) const {
    auto it = tolerances.find(name);
    if (it != tolerances.end()) return it->second;
    return default_tolerances().at(name);
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto& [k, v] : j.items())
        if (!known.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

double positive(const json& j, const char* key) {
    if (!j.is_number()) throw ConfigError(std::string(key) + " must be a number");
    double v = j.get<double>();
    if (!(v > 0)) throw ConfigError(std::string(key) + " must be positive");
    return v;
}

cplx complex_of(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(what) + " must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

// "<name>-genus<g>" -> g, else -1
int genus_of(const std::string& group) {
    static const std::regex re(R"(^[a-z]+-genus([0-9]+)$)");
    std::smatch m;
    if (!std::regex_match(group, m, re)) return -1;
    return std::stoi(m[1]);
}

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be an object");
    reject_unknown(j, {"group", "generators", "nodes_per_arc", "scan", "tolerances", "output_dir", "seed"}, "config");
    RunConfig c;
    if (j.contains("group")) {
        if (!j["group"].is_string()) throw ConfigError("group must be a string");
        c.group = j["group"].get<std::string>();
    }
    if (c.group != "generators" && genus_of(c.group) < 0)
        throw ConfigError("unsupported group '" + c.group + "' (built-in: octagon-genus2)");
    if (j.contains("generators")) {
        if (c.group != "generators") throw ConfigError("generators given but group is not 'generators'");
        for (auto& g : j["generators"]) {
            reject_unknown(g, {"a", "b"}, "generator");
            Mobius m;
            m.a = complex_of(g.at("a"), "a");
            m.b = complex_of(g.at("b"), "b");
            c.generators.push_back(m);
        }
    }
    if (c.group == "generators" && c.generators.empty()) throw ConfigError("group 'generators' needs a generator list");
    if (j.contains("nodes_per_arc")) {
        if (!j["nodes_per_arc"].is_number_integer()) throw ConfigError("nodes_per_arc must be an integer");
        c.nodes_per_arc = j["nodes_per_arc"].get<int>();
        if (c.nodes_per_arc < 4) throw ConfigError("nodes_per_arc must be at least 4");
    }
    if (j.contains("scan")) {
        const json& s = j["scan"];
        if (!s.is_object()) throw ConfigError("scan must be an object");
        reject_unknown(s, {"t_min", "t_max", "step"}, "scan");
        if (s.contains("t_min")) {
            if (!s["t_min"].is_number() || s["t_min"].get<double>() < 0) throw ConfigError("scan.t_min must be >= 0");
            c.scan.t_min = s["t_min"].get<double>();
        }
        if (s.contains("t_max")) {
            if (!s["t_max"].is_number()) throw ConfigError("scan.t_max must be a number");
            c.scan.t_max = s["t_max"].get<double>();
        }
        if (s.contains("step")) c.scan.step = positive(s["step"], "scan.step");
        if (c.scan.t_max < c.scan.t_min) throw ConfigError("scan.t_max must not be below scan.t_min");
    }
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) throw ConfigError("tolerances must be an object");
        for (auto& [k, v] : j["tolerances"].items()) {
            if (!default_tolerances().count(k)) throw ConfigError("unknown tolerance '" + k + "'");
            c.tolerances[k] = positive(v, k.c_str());
        }
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string() || j["output_dir"].get<std::string>().empty())
            throw ConfigError("output_dir must be a non-empty string");
        c.output_dir = j["output_dir"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

FuchsianGroup build_group(const RunConfig& cfg) {
    if (cfg.group == "generators") return group_from_generators(cfg.generators);
    return build_regular_4g_gon(genus_of(cfg.group));
}

} // namespace bsl
