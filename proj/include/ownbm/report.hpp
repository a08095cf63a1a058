#pragma once

#include <string>

#include <json.hpp>

#include "ownbm/experiment.hpp"
#include "ownbm/oracle.hpp"

namespace ownbm {

inline nlohmann::ordered_json to_json(const InstanceSummary& s) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    j["mode"] = s.mode == WeightMode::edge ? "edge" : "vertex";
    j["n"] = s.n;
    j["d"] = s.d;
    j["edges"] = s.edge_count;
    j["opt"] = s.opt;
    j["oracle_method"] = to_string(s.oracle_method);
    j["oracle_nodes"] = s.oracle_nodes;
    j["trials"] = s.trials;
    j["mean_final"] = s.mean_final;
    j["stderr_final"] = s.stderr_final;
    if (s.ratio_defined) {
        j["mean_ratio"] = s.mean_ratio;
    } else {
        j["mean_ratio"] = "undefined";
    }
    if (s.mode == WeightMode::edge) {
        j["mean_semi"] = s.mean_intermediate;
    } else {
        j["mean_half"] = s.mean_intermediate;
    }
    if (s.det_ratio_defined) {
        j["min_deterministic_ratio"] = s.min_det_ratio;
    } else {
        j["min_deterministic_ratio"] = "undefined";
    }
    if (s.mode == WeightMode::vertex) {
        j["branches"] = {{"origin", s.origin_trials}, {"destination", s.destination_trials}};
    }
    j["violations"] = {{"deadline", s.deadline_violations},
                       {"floor", s.floor_violations},
                       {"validation", s.validation_violations}};
    return j;
}

/// Deterministic report serialization: no timestamps, fixed key order, so
/// identical configs produce identical bytes.
inline std::string report_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["pipeline"] = to_string(r.config.pipeline);
    j["trials"] = r.config.trials;
    j["base_seed"] = r.config.base_seed;
    j["strict"] = r.config.strict;
    j["instances"] = nlohmann::ordered_json::array();
    for (const InstanceSummary& s : r.instances) j["instances"].push_back(to_json(s));
    j["totals"] = {{"instances", r.instances.size()},
                   {"trials", r.total_trials},
                   {"deadline_violations", r.total_deadline_violations},
                   {"floor_violations", r.total_floor_violations},
                   {"validation_violations", r.total_validation_violations}};
    return j.dump(2) + "\n";
}

inline std::string oracle_json(const OracleResult& res) {
    nlohmann::ordered_json j;
    j["optimum"] = res.optimum;
    j["method"] = to_string(res.method);
    j["nodes"] = res.nodes;
    j["witness"] = nlohmann::ordered_json::array();
    for (const PickedEdge& pe : res.witness.entries) {
        j["witness"].push_back({{"from", pe.from}, {"to", pe.to}, {"pick_time", pe.pick_time}});
    }
    return j.dump(2) + "\n";
}

}  // namespace ownbm
