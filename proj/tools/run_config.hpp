#pragma once

// Run configuration: a JSON file with nested key/value blocks. Complex
// numbers are [re, im] pairs whose components are JSON numbers or strings
// such as "1/3" or "0.25"; strings are read exactly.

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <biorth/random_weight.hpp>
#include <biorth/rational.hpp>
#include <biorth/weights.hpp>

#include "json.hpp"

namespace biorth::cli {

using json = nlohmann::json;

enum class MomentMode { formal, quadrature };

struct FlowConfig {
    bool use_config_weight = false;  // otherwise the standard one- and two-point families
    std::vector<int> levels{2};
    int precision_bits = 256;
    double min_order = 1.9;
};

struct SweepConfig {
    std::string parameter = "t";  // "t" moves z_index, "rho" moves rho_index
    int index = 1;
    crat from, to;
    int points = 11;
    int threads = 0;  // 0: hardware concurrency
};

struct RunConfig {
    WeightSpec weight;
    std::vector<crat> seeds;
    int seed_lo = -1;
    MomentMode mode = MomentMode::formal;
    rational radius{rational(3, 5)};
    int n_max = 10;
    int precision_bits = 128;
    double tolerance = 1e-20;
    std::uint64_t seed = 1;
    std::set<std::string> checks{"identities", "bilinear", "summation", "flow", "oracle", "tau"};
    FlowConfig flow;
    SweepConfig sweep;
    std::string random_from;  // nonempty when the weight was drawn at random
};

inline const std::set<std::string>& known_checks() {
    static const std::set<std::string> k{"identities", "bilinear", "summation", "flow", "oracle", "tau"};
    return k;
}

inline rational json_rational(const json& v, const std::string& what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return rational(v.get<long long>());
    if (v.is_number()) return rational_from_double(v.get<double>());
    throw ConfigError(what + ": expected a number or a numeric string");
}

inline crat json_complex(const json& v, const std::string& what) {
    if (v.is_array() && v.size() == 2) return crat(json_rational(v[0], what), json_rational(v[1], what));
    if (v.is_number() || v.is_string()) return crat(json_rational(v, what));
    throw ConfigError(what + ": expected [re, im]");
}

inline std::vector<crat> json_complex_list(const json& v, const std::string& what) {
    if (!v.is_array()) throw ConfigError(what + ": expected a list of [re, im] pairs");
    std::vector<crat> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_complex(v[i], what + "[" + std::to_string(i) + "]"));
    return out;
}

template <class T>
T json_get(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& block) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + block);
}

// The weight is either given explicitly or drawn from the RNG seed with
// "random_weight": {"M": 3}.
inline RunConfig parse_config(const json& j, std::optional<std::uint64_t> seed_override) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown_keys(j,
                        {"weight", "random_weight", "mode", "seeds", "seed_lo", "radius", "n_max", "precision_bits",
                         "tolerance", "seed", "checks", "flow", "sweep"},
                        "config");
    RunConfig c;
    c.seed = seed_override ? *seed_override : json_get<std::uint64_t>(j, "seed", 1);
    c.n_max = json_get<int>(j, "n_max", c.n_max);
    c.precision_bits = json_get<int>(j, "precision_bits", c.precision_bits);
    c.tolerance = json_get<double>(j, "tolerance", c.tolerance);
    c.seed_lo = json_get<int>(j, "seed_lo", c.seed_lo);
    if (j.contains("radius")) c.radius = json_rational(j["radius"], "radius");

    const std::string mode = json_get<std::string>(j, "mode", "formal");
    if (mode == "formal")
        c.mode = MomentMode::formal;
    else if (mode == "quadrature")
        c.mode = MomentMode::quadrature;
    else
        throw ConfigError("mode must be 'formal' or 'quadrature'");

    if (j.contains("weight") == j.contains("random_weight"))
        throw ConfigError("give exactly one of 'weight' and 'random_weight'");
    if (j.contains("weight")) {
        const auto& w = j["weight"];
        reject_unknown_keys(w, {"placement", "z", "rho"}, "weight");
        const std::string pl = json_get<std::string>(w, "placement", "canonical");
        if (pl == "canonical")
            c.weight.placement = Placement::canonical;
        else if (pl == "general")
            c.weight.placement = Placement::general;
        else
            throw ConfigError("placement must be 'canonical' or 'general'");
        if (!w.contains("z") || !w.contains("rho")) throw ConfigError("weight needs 'z' and 'rho'");
        c.weight.z = json_complex_list(w["z"], "weight.z");
        c.weight.rho = json_complex_list(w["rho"], "weight.rho");
        if (j.contains("seeds")) c.seeds = json_complex_list(j["seeds"], "seeds");
    } else {
        const auto& rw = j["random_weight"];
        reject_unknown_keys(rw, {"M"}, "random_weight");
        const int M = json_get<int>(rw, "M", 3);
        if (M < 3) throw ConfigError("random weights need M >= 3");
        Rng rng(c.seed);
        auto rf = random_formal_weight(rng, M);
        c.weight = rf.spec;
        c.seeds = rf.seeds;
        c.seed_lo = -1;
        c.random_from = "seed " + std::to_string(c.seed) + ", M = " + std::to_string(M);
        if (j.contains("seeds")) throw ConfigError("random weights draw their own seeds");
    }
    if (c.mode == MomentMode::formal && c.seeds.empty()) throw ConfigError("formal mode needs seed moments");

    if (j.contains("checks")) {
        c.checks.clear();
        for (const auto& x : j["checks"]) {
            if (!x.is_string() || !known_checks().count(x.get<std::string>()))
                throw ConfigError("unknown check '" + x.dump() + "'");
            c.checks.insert(x.get<std::string>());
        }
    }
    if (j.contains("flow")) {
        const auto& f = j["flow"];
        reject_unknown_keys(f, {"family", "levels", "precision_bits", "min_order"}, "flow");
        const std::string fam = json_get<std::string>(f, "family", "standard");
        if (fam != "standard" && fam != "config") throw ConfigError("flow.family must be 'standard' or 'config'");
        c.flow.use_config_weight = fam == "config";
        c.flow.levels = json_get<std::vector<int>>(f, "levels", c.flow.levels);
        c.flow.precision_bits = json_get<int>(f, "precision_bits", c.flow.precision_bits);
        c.flow.min_order = json_get<double>(f, "min_order", c.flow.min_order);
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        reject_unknown_keys(s, {"parameter", "index", "from", "to", "points", "threads"}, "sweep");
        c.sweep.parameter = json_get<std::string>(s, "parameter", c.sweep.parameter);
        if (c.sweep.parameter != "t" && c.sweep.parameter != "rho")
            throw ConfigError("sweep.parameter must be 't' or 'rho'");
        c.sweep.index = json_get<int>(s, "index", c.sweep.index);
        if (!s.contains("from") || !s.contains("to")) throw ConfigError("sweep needs 'from' and 'to'");
        c.sweep.from = json_complex(s["from"], "sweep.from");
        c.sweep.to = json_complex(s["to"], "sweep.to");
        c.sweep.points = json_get<int>(s, "points", c.sweep.points);
        c.sweep.threads = json_get<int>(s, "threads", c.sweep.threads);
        if (c.sweep.points < 1) throw ConfigError("sweep.points must be positive");
    }
    return c;
}

inline void validate(const RunConfig& c) {
    if (c.n_max < 1) throw ConfigError("n_max must be at least 1");
    if (c.precision_bits < 53) throw ConfigError("precision_bits must be at least 53");
    if (c.precision_bits > 256) throw ConfigError("precision above 256 bits is not supported");
    if (!(c.tolerance >= 0)) throw ConfigError("tolerance must be nonnegative");
    if (c.flow.precision_bits < 53 || c.flow.precision_bits > 256) throw ConfigError("flow.precision_bits out of range");
    build_weight(c.weight);  // throws on an invalid weight
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

}  // namespace biorth::cli
