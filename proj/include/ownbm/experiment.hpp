#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ownbm/edge_weighted.hpp"
#include "ownbm/instance.hpp"
#include "ownbm/oracle.hpp"
#include "ownbm/structures.hpp"
#include "ownbm/vertex_weighted.hpp"

namespace ownbm {

enum class PipelineChoice : unsigned char { edge, vertex, both };

inline const char* to_string(PipelineChoice p) {
    switch (p) {
        case PipelineChoice::edge: return "edge";
        case PipelineChoice::vertex: return "vertex";
        case PipelineChoice::both: return "both";
    }
    return "?";
}

inline PipelineChoice parse_pipeline(std::string_view s) {
    if (s == "edge") return PipelineChoice::edge;
    if (s == "vertex") return PipelineChoice::vertex;
    if (s == "both") return PipelineChoice::both;
    throw std::invalid_argument("pipeline must be edge, vertex or both");
}

struct ExperimentConfig {
    PipelineChoice pipeline = PipelineChoice::both;
    int trials = 1;
    std::uint64_t base_seed = 0;
    bool strict = false;
    OracleOptions oracle;
};

/// One pipeline run. Trials are numbered from 0; trial k runs with seed
/// base_seed + k. Vertex-mode fields are unset on edge-mode rows.
struct TrialRow {
    std::string instance_id;
    int trial = 0;
    std::uint64_t seed = 0;
    bool has_branch = false;
    Branch branch = Branch::origin;
    double semi_weight = 0.0;
    bool has_half = false;
    double half_weight = 0.0;
    double final_weight = 0.0;
    double opt = 0.0;
};

struct InstanceSummary {
    std::string id;
    WeightMode mode = WeightMode::edge;
    int n = 0;
    int d = 0;
    std::uint64_t edge_count = 0;
    double opt = 0.0;
    OracleMethod oracle_method = OracleMethod::exhaustive;
    std::uint64_t oracle_nodes = 0;
    int trials = 0;
    double mean_final = 0.0;
    double stderr_final = 0.0;
    double mean_intermediate = 0.0;  // mean semi-matching weight / mean half-weight
    bool ratio_defined = false;      // false iff opt == 0
    double mean_ratio = 0.0;         // mean_final / opt
    // Edge mode: min over trials of semi-matching weight / opt.
    // Vertex mode: min over trials of 3-matching weight / half-weight.
    bool det_ratio_defined = false;
    double min_det_ratio = 0.0;
    int origin_trials = 0;
    int destination_trials = 0;
    int deadline_violations = 0;
    int floor_violations = 0;
    int validation_violations = 0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<InstanceSummary> instances;
    std::uint64_t total_trials = 0;
    int total_deadline_violations = 0;
    int total_floor_violations = 0;
    int total_validation_violations = 0;

    bool clean() const {
        return total_deadline_violations == 0 && total_floor_violations == 0 &&
               total_validation_violations == 0;
    }
};

namespace detail {

inline int count_deadline_violations(const Instance& inst, const std::vector<PickedEdge>& entries) {
    int count = 0;
    for (const PickedEdge& pe : entries) {
        if (pe.pick_time > pe.to + inst.d) ++count;
    }
    return count;
}

inline int count_deletion_violations(const Instance& inst, const ThreeMatching& tm) {
    int count = 0;
    for (const ThreeMatchEvent& ev : tm.event_log) {
        if (ev.action == ThreeMatchAction::delete_edge_and_repair && ev.time > ev.from + inst.d) {
            ++count;
        }
    }
    return count;
}

/// Streaming mean/variance (Welford). Deterministic for a fixed value order.
struct RunningStats {
    int count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    double standard_error() const {
        if (count < 2) return 0.0;
        const double variance = m2 / (count - 1);
        return std::sqrt(variance / count);
    }
};

}  // namespace detail

/// Runs one instance for `trials` seeded trials, streaming each row to
/// `sink` (when set) and returning the aggregate summary. In strict mode the
/// first invariant breach throws; otherwise breaches are counted.
inline InstanceSummary run_instance_trials(const std::string& id, const Instance& inst,
                                           const ExperimentConfig& cfg,
                                           const std::function<void(const TrialRow&)>& sink) {
    if (cfg.trials < 1) throw std::invalid_argument("experiment: trials must be at least 1");
    ValidationReport inst_rep = validate_instance(inst);
    if (!inst_rep.ok()) {
        throw std::invalid_argument("experiment: instance " + id + " invalid: " + inst_rep.joined());
    }

    InstanceSummary sum;
    sum.id = id;
    sum.mode = inst.mode;
    sum.n = inst.n;
    sum.d = inst.d;
    sum.edge_count = inst.edges.size();
    const OracleResult oracle = optimum(inst, cfg.oracle);
    sum.opt = oracle.optimum;
    sum.oracle_method = oracle.method;
    sum.oracle_nodes = oracle.nodes;
    sum.trials = cfg.trials;
    sum.ratio_defined = sum.opt > 0.0;

    detail::RunningStats final_stats;
    detail::RunningStats intermediate_stats;
    auto breach = [&](int& counter, const std::string& what, int trial) {
        ++counter;
        if (cfg.strict) {
            throw std::runtime_error("experiment: instance " + id + " trial " +
                                     std::to_string(trial) + ": " + what);
        }
    };

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(trial);
        TrialRow row;
        row.instance_id = id;
        row.trial = trial;
        row.seed = seed;
        row.opt = sum.opt;

        if (inst.mode == WeightMode::edge) {
            const EdgeRunResult run = run_edge_pipeline(inst, seed);
            row.semi_weight = measure(inst, run.semi);
            row.final_weight = measure(inst, run.matching);

            const ValidationReport semi_rep = validate_semi_matching(inst, run.semi);
            const ValidationReport match_rep = validate_matching(inst, run.matching);
            if (!semi_rep.ok()) breach(sum.validation_violations, semi_rep.joined(), trial);
            if (!match_rep.ok()) breach(sum.validation_violations, match_rep.joined(), trial);
            const int late = detail::count_deadline_violations(inst, run.semi.entries) +
                             detail::count_deadline_violations(inst, run.matching.entries);
            if (late > 0) breach(sum.deadline_violations, "late pick", trial);
            // Deterministic half bound; the slack only covers rounding on
            // instances whose weights are not grid-aligned.
            if (sum.opt > 0.0 &&
                row.semi_weight < 0.5 * sum.opt - 1e-9 * std::max(1.0, sum.opt)) {
                breach(sum.floor_violations, "semi-matching below half the optimum", trial);
            }
            if (sum.opt > 0.0) {
                const double det = row.semi_weight / sum.opt;
                if (!sum.det_ratio_defined || det < sum.min_det_ratio) sum.min_det_ratio = det;
                sum.det_ratio_defined = true;
            }
            intermediate_stats.add(row.semi_weight);
        } else {
            const VertexRunResult run = run_vertex_pipeline(inst, seed);
            row.has_branch = true;
            row.branch = run.branch;
            row.has_half = true;
            row.semi_weight = measure(inst, run.semi);
            row.half_weight = half_weight(inst, run.semi, run.branch);
            row.final_weight = measure(inst, run.three_matching);
            (run.branch == Branch::origin ? sum.origin_trials : sum.destination_trials) += 1;

            const ValidationReport semi_rep = validate_semi_matching(inst, run.semi);
            const ValidationReport tm_rep = validate_three_matching(inst, run.three_matching);
            if (!semi_rep.ok()) breach(sum.validation_violations, semi_rep.joined(), trial);
            if (!tm_rep.ok()) breach(sum.validation_violations, tm_rep.joined(), trial);
            const int late = detail::count_deadline_violations(inst, run.semi.entries) +
                             detail::count_deletion_violations(inst, run.three_matching);
            if (late > 0) breach(sum.deadline_violations, "late pick or deletion", trial);
            if (row.final_weight < row.half_weight) {
                breach(sum.floor_violations, "3-matching below half-weight", trial);
            }
            if (row.half_weight > 0.0) {
                const double det = row.final_weight / row.half_weight;
                if (!sum.det_ratio_defined || det < sum.min_det_ratio) sum.min_det_ratio = det;
                sum.det_ratio_defined = true;
            }
            intermediate_stats.add(row.half_weight);
        }

        final_stats.add(row.final_weight);
        if (sink) sink(row);
    }

    sum.mean_final = final_stats.mean;
    sum.stderr_final = final_stats.standard_error();
    sum.mean_intermediate = intermediate_stats.mean;
    if (sum.ratio_defined) sum.mean_ratio = sum.mean_final / sum.opt;
    return sum;
}

/// Runs the configured pipeline over a batch of named instances. Each
/// instance runs the pipeline matching its weight mode; selecting a single
/// pipeline rejects instances of the other mode up front.
inline ExperimentReport run_experiment(const std::vector<std::pair<std::string, Instance>>& instances,
                                       const ExperimentConfig& cfg,
                                       const std::function<void(const TrialRow&)>& sink = {}) {
    for (const auto& [id, inst] : instances) {
        if (cfg.pipeline == PipelineChoice::edge && inst.mode != WeightMode::edge) {
            throw std::invalid_argument("experiment: instance " + id +
                                        " is vertex-weighted but the edge pipeline was selected");
        }
        if (cfg.pipeline == PipelineChoice::vertex && inst.mode != WeightMode::vertex) {
            throw std::invalid_argument("experiment: instance " + id +
                                        " is edge-weighted but the vertex pipeline was selected");
        }
    }
    ExperimentReport report;
    report.config = cfg;
    for (const auto& [id, inst] : instances) {
        InstanceSummary sum = run_instance_trials(id, inst, cfg, sink);
        report.total_trials += static_cast<std::uint64_t>(sum.trials);
        report.total_deadline_violations += sum.deadline_violations;
        report.total_floor_violations += sum.floor_violations;
        report.total_validation_violations += sum.validation_violations;
        report.instances.push_back(std::move(sum));
    }
    return report;
}

inline const char* kTrialsCsvHeader =
    "instance_id,trial,seed,branch,semi_weight,half_weight,final_weight,opt,ratio";

/// One CSV line per trial, fixed column order, `.` decimal separator.
/// Inapplicable cells (branch and half_weight on edge rows) hold `-`;
/// a ratio against OPT = 0 is the literal `undefined`.
inline std::string trial_csv_row(const TrialRow& row) {
    std::string line = row.instance_id;
    line += ',';
    line += std::to_string(row.trial);
    line += ',';
    line += std::to_string(row.seed);
    line += ',';
    line += row.has_branch ? to_string(row.branch) : "-";
    line += ',';
    line += fmt_double(row.semi_weight);
    line += ',';
    line += row.has_half ? fmt_double(row.half_weight) : std::string("-");
    line += ',';
    line += fmt_double(row.final_weight);
    line += ',';
    line += fmt_double(row.opt);
    line += ',';
    line += row.opt > 0.0 ? fmt_double(row.final_weight / row.opt) : std::string("undefined");
    return line;
}

}  // namespace ownbm
