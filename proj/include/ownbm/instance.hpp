#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ownbm/common.hpp"

namespace ownbm {

/// Directed edge (from, to) with from > to: every edge points from an
/// arriving vertex back to one of the d preceding vertices. The weight
/// field is meaningful in edge mode only and ignored otherwise.
struct Edge {
    VertexId from = 0;
    VertexId to = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Canonical edge order: ascending (from, to). Generators and parsers
/// normalize to this order so equal instances serialize identically.
inline bool edge_order(const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
}

/// A problem instance: n vertices arriving one per time step, incidence
/// window d, and either per-edge or per-vertex non-negative weights.
struct Instance {
    int n = 0;
    int d = 0;
    WeightMode mode = WeightMode::edge;
    std::vector<double> vertex_weights;  // size n in vertex mode, empty otherwise
    std::vector<Edge> edges;             // canonical order

    friend bool operator==(const Instance&, const Instance&) = default;

    bool has_vertex(VertexId v) const { return 1 <= v && v <= n; }

    /// Weight of vertex v (vertex mode). No bounds check beyond the vector's.
    double vertex_weight(VertexId v) const { return vertex_weights[static_cast<size_t>(v - 1)]; }

    /// Looks up edge (from, to) by binary search over the canonical order.
    const Edge* find_edge(VertexId from, VertexId to) const {
        Edge probe{from, to, 0.0};
        auto it = std::lower_bound(edges.begin(), edges.end(), probe, edge_order);
        if (it != edges.end() && it->from == from && it->to == to) return &*it;
        return nullptr;
    }
};

/// Validation outcome: a (possibly empty) list of human-readable violations.
/// Violations are data, not failures; nothing here throws.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }

    void add(std::string msg) { violations.emplace_back(std::move(msg)); }

    std::string joined() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }
};

inline bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

inline std::string edge_str(VertexId from, VertexId to) {
    return "(" + std::to_string(from) + "," + std::to_string(to) + ")";
}

/// Checks every structural invariant of an instance and reports each
/// violation with the offending edge or vertex.
inline ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    if (inst.n <= 0) rep.add("vertex count must be positive, got " + std::to_string(inst.n));
    if (inst.d < 0) rep.add("incidence window must be non-negative, got " + std::to_string(inst.d));

    if (inst.mode == WeightMode::vertex) {
        if (static_cast<int>(inst.vertex_weights.size()) != inst.n) {
            rep.add("vertex mode requires exactly n=" + std::to_string(inst.n) + " vertex weights, got " +
                    std::to_string(inst.vertex_weights.size()));
        }
        for (size_t i = 0; i < inst.vertex_weights.size(); ++i) {
            if (!finite_nonneg(inst.vertex_weights[i])) {
                rep.add("vertex " + std::to_string(i + 1) + ": weight must be a finite non-negative number");
            }
        }
    } else if (!inst.vertex_weights.empty()) {
        rep.add("edge mode must not carry vertex weights");
    }

    for (const Edge& e : inst.edges) {
        const std::string es = edge_str(e.from, e.to);
        if (e.from <= e.to) {
            rep.add("edge " + es + ": origin must exceed terminal");
            continue;
        }
        if (e.to < 1 || e.from > inst.n) {
            rep.add("edge " + es + ": endpoint outside 1.." + std::to_string(inst.n));
            continue;
        }
        if (e.from - e.to > inst.d) {
            rep.add("edge " + es + ": window: gap " + std::to_string(e.from - e.to) + " > d=" +
                    std::to_string(inst.d));
        }
        if (inst.mode == WeightMode::edge && !finite_nonneg(e.weight)) {
            rep.add("edge " + es + ": weight must be a finite non-negative number");
        }
    }

    // Duplicate detection on a sorted copy; the instance itself may be unsorted.
    std::vector<std::pair<VertexId, VertexId>> pairs;
    pairs.reserve(inst.edges.size());
    for (const Edge& e : inst.edges) pairs.emplace_back(e.from, e.to);
    std::sort(pairs.begin(), pairs.end());
    for (size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i] == pairs[i - 1]) {
            rep.add("edge " + edge_str(pairs[i].first, pairs[i].second) + ": duplicate edge");
        }
    }
    return rep;
}

/// Sorts edges into canonical order. Call after building an instance by hand;
/// generators and the parser already emit canonical order.
inline Instance& normalize(Instance& inst) {
    std::sort(inst.edges.begin(), inst.edges.end(), edge_order);
    return inst;
}

/// One step of the arrival stream: vertex `vertex` arrives at time `time`
/// and reveals the edges originating from it.
struct ArrivalEvent {
    TimeStep time = 0;
    VertexId vertex = 0;
    double vertex_weight = 0.0;  // vertex mode only
    std::vector<Edge> revealed;  // all edges with from == vertex
};

/// Expands an instance into its arrival sequence: n events, event t carrying
/// vertex t and exactly the edges originating at t. Rejects invalid instances.
inline std::vector<ArrivalEvent> stream(const Instance& inst) {
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("stream: invalid instance: " + rep.joined());
    std::vector<ArrivalEvent> events(static_cast<size_t>(inst.n));
    for (int v = 1; v <= inst.n; ++v) {
        auto& ev = events[static_cast<size_t>(v - 1)];
        ev.time = v;
        ev.vertex = v;
        if (inst.mode == WeightMode::vertex) ev.vertex_weight = inst.vertex_weight(v);
    }
    for (const Edge& e : inst.edges) events[static_cast<size_t>(e.from - 1)].revealed.push_back(e);
    for (auto& ev : events) std::sort(ev.revealed.begin(), ev.revealed.end(), edge_order);
    return events;
}

/// Per-vertex incidence lists, built once per run. `out[v]` holds edges
/// originating at v, `in[v]` edges terminating at v, both in canonical order.
struct AdjacencyIndex {
    std::vector<std::vector<Edge>> out;
    std::vector<std::vector<Edge>> in;

    explicit AdjacencyIndex(const Instance& inst)
        : out(static_cast<size_t>(inst.n) + 1), in(static_cast<size_t>(inst.n) + 1) {
        for (const Edge& e : inst.edges) {
            out[static_cast<size_t>(e.from)].push_back(e);
            in[static_cast<size_t>(e.to)].push_back(e);
        }
        for (auto& v : out) std::sort(v.begin(), v.end(), edge_order);
        for (auto& v : in) {
            std::sort(v.begin(), v.end(), [](const Edge& a, const Edge& b) { return a.from < b.from; });
        }
    }
};

}  // namespace ownbm
