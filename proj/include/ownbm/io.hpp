#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ownbm/instance.hpp"

namespace ownbm {

/// Raised on malformed instance text: syntax errors carry the 1-based line
/// of the failure, semantic errors name the offending field or edge.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline int line_of_byte(std::string_view text, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) { known = true; break; }
        }
        if (!known) throw ParseError(where + ": unknown field \"" + it.key() + "\"");
    }
}

inline int require_int(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError(where + ": field \"" + std::string(key) +
                                                 "\" must be an integer");
    return v.get<int>();
}

inline double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(where + ": field \"" + std::string(key) + "\" must be a number");
    return v.get<double>();
}

}  // namespace detail

/// Renders an instance as the interchange JSON text. Field and edge order
/// are canonical, so equal instances serialize to identical bytes.
inline std::string serialize(const Instance& inst) {
    nlohmann::ordered_json j;
    j["n"] = inst.n;
    j["d"] = inst.d;
    j["mode"] = to_string(inst.mode);
    if (inst.mode == WeightMode::vertex) j["vertex_weights"] = inst.vertex_weights;
    auto edges = nlohmann::ordered_json::array();
    std::vector<Edge> sorted = inst.edges;
    std::sort(sorted.begin(), sorted.end(), edge_order);
    for (const Edge& e : sorted) {
        nlohmann::ordered_json je;
        je["from"] = e.from;
        je["to"] = e.to;
        if (inst.mode == WeightMode::edge) je["weight"] = e.weight;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
}

/// Parses the interchange format. Accepts edges in any order and normalizes
/// them; rejects unknown fields, reversed pairs, duplicates, and every other
/// instance-invariant violation.
inline Instance parse_instance(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("line " + std::to_string(detail::line_of_byte(text, e.byte)) + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError("instance: top level must be an object");
    detail::reject_unknown_keys(j, {"n", "d", "mode", "vertex_weights", "edges"}, "instance");

    Instance inst;
    inst.n = detail::require_int(j, "n", "instance");
    inst.d = detail::require_int(j, "d", "instance");

    if (!j.contains("mode") || !j.at("mode").is_string()) {
        throw ParseError("instance: missing or non-string field \"mode\"");
    }
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "edge") {
        inst.mode = WeightMode::edge;
    } else if (mode == "vertex") {
        inst.mode = WeightMode::vertex;
    } else {
        throw ParseError("instance: mode must be \"edge\" or \"vertex\", got \"" + mode + "\"");
    }

    if (inst.mode == WeightMode::vertex) {
        if (!j.contains("vertex_weights") || !j.at("vertex_weights").is_array()) {
            throw ParseError("instance: vertex mode requires array field \"vertex_weights\"");
        }
        for (const auto& w : j.at("vertex_weights")) {
            if (!w.is_number()) throw ParseError("instance: vertex_weights entries must be numbers");
            inst.vertex_weights.push_back(w.get<double>());
        }
    } else if (j.contains("vertex_weights")) {
        throw ParseError("instance: \"vertex_weights\" is only valid in vertex mode");
    }

    if (!j.contains("edges") || !j.at("edges").is_array()) {
        throw ParseError("instance: missing array field \"edges\"");
    }
    int idx = 0;
    for (const auto& je : j.at("edges")) {
        ++idx;
        const std::string where = "edge #" + std::to_string(idx);
        if (!je.is_object()) throw ParseError(where + ": must be an object");
        if (inst.mode == WeightMode::edge) {
            detail::reject_unknown_keys(je, {"from", "to", "weight"}, where);
        } else {
            detail::reject_unknown_keys(je, {"from", "to"}, where);
        }
        Edge e;
        e.from = detail::require_int(je, "from", where);
        e.to = detail::require_int(je, "to", where);
        if (inst.mode == WeightMode::edge) e.weight = detail::require_number(je, "weight", where);
        inst.edges.push_back(e);
    }
    normalize(inst);

    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw ParseError("instance: " + rep.joined());
    return inst;
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << serialize(inst);
}

}  // namespace ownbm
