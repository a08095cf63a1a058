#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ownbm/instance.hpp"
#include "ownbm/structures.hpp"

namespace ownbm {

enum class OracleMethod : unsigned char { automatic, exhaustive, branch_and_bound };

inline const char* to_string(OracleMethod m) {
    switch (m) {
        case OracleMethod::automatic: return "automatic";
        case OracleMethod::exhaustive: return "exhaustive";
        case OracleMethod::branch_and_bound: return "branch-and-bound";
    }
    return "?";
}

struct OracleOptions {
    OracleMethod method = OracleMethod::automatic;
    int exhaustive_edge_cap = 26;
};

/// Exact offline optimum with one witness matching. The witness always
/// passes validate_matching (entries stamped with the origin's arrival as
/// pick time) and its weight equals the reported optimum.
struct OracleResult {
    double optimum = 0.0;
    Matching witness;
    OracleMethod method = OracleMethod::exhaustive;
    std::uint64_t nodes = 0;
};

namespace detail {

struct MatchingSearch {
    const Instance* inst;
    std::vector<Edge> edges;      // search order
    std::vector<double> suffix;   // sorted-descending weights, for bounds
    std::vector<char> used;
    std::vector<int> chosen;
    std::vector<int> best_set;
    double best = 0.0;
    std::uint64_t nodes = 0;

    explicit MatchingSearch(const Instance& i) : inst(&i), used(static_cast<size_t>(i.n) + 1, 0) {}

    bool endpoints_free(const Edge& e) const {
        return used[static_cast<size_t>(e.from)] == 0 && used[static_cast<size_t>(e.to)] == 0;
    }

    void mark(const Edge& e, char v) {
        used[static_cast<size_t>(e.from)] = v;
        used[static_cast<size_t>(e.to)] = v;
    }

    // Enumerates every matching extendable from position `pos`, keeping the
    // first-found maximum (deterministic given the canonical edge order).
    void exhaustive(size_t pos, double weight) {
        ++nodes;
        if (weight > best) {
            best = weight;
            best_set = chosen;
        }
        for (size_t k = pos; k < edges.size(); ++k) {
            if (!endpoints_free(edges[k])) continue;
            mark(edges[k], 1);
            chosen.push_back(static_cast<int>(k));
            exhaustive(k + 1, weight + edges[k].weight);
            chosen.pop_back();
            mark(edges[k], 0);
        }
    }

    // Include/exclude search over weight-sorted edges. The bound adds the
    // largest remaining weights, at most one per two free vertices; pruning
    // keeps the first-found maximum among explored nodes.
    void branch_and_bound(size_t pos, double weight, int free_vertices) {
        ++nodes;
        if (weight > best) {
            best = weight;
            best_set = chosen;
        }
        if (pos == edges.size() || free_vertices < 2) return;
        const size_t take = std::min(edges.size() - pos, static_cast<size_t>(free_vertices / 2));
        const double bound = weight + (suffix[pos] - suffix[pos + take]);
        // The relative inflation keeps the prune sound against accumulated
        // rounding in the suffix sums.
        if (bound * (1.0 + 1e-12) <= best) return;
        if (endpoints_free(edges[pos])) {
            mark(edges[pos], 1);
            chosen.push_back(static_cast<int>(pos));
            branch_and_bound(pos + 1, weight + edges[pos].weight, free_vertices - 2);
            chosen.pop_back();
            mark(edges[pos], 0);
        }
        branch_and_bound(pos + 1, weight, free_vertices);
    }
};

inline OracleResult solve_edge_optimum(const Instance& inst, const OracleOptions& opts) {
    OracleResult res;
    const size_t m = inst.edges.size();
    OracleMethod method = opts.method;
    if (method == OracleMethod::automatic) {
        method = m <= static_cast<size_t>(opts.exhaustive_edge_cap) ? OracleMethod::exhaustive
                                                                    : OracleMethod::branch_and_bound;
    }
    if (method == OracleMethod::exhaustive && m > static_cast<size_t>(opts.exhaustive_edge_cap)) {
        throw std::invalid_argument("oracle: " + std::to_string(m) + " edges exceed the exhaustive cap of " +
                                    std::to_string(opts.exhaustive_edge_cap) +
                                    "; enable branch-and-bound");
    }
    res.method = method;

    MatchingSearch search(inst);
    search.edges = inst.edges;
    if (method == OracleMethod::exhaustive) {
        search.exhaustive(0, 0.0);
    } else {
        // Heaviest-first order tightens the greedy bound; ties keep the
        // canonical (from,to) order for determinism.
        std::stable_sort(search.edges.begin(), search.edges.end(),
                         [](const Edge& a, const Edge& b) { return a.weight > b.weight; });
        search.suffix.assign(search.edges.size() + 1, 0.0);
        for (size_t k = search.edges.size(); k-- > 0;) {
            search.suffix[k] = search.suffix[k + 1] + search.edges[k].weight;
        }
        search.branch_and_bound(0, 0.0, inst.n);
    }
    res.optimum = search.best;
    res.nodes = search.nodes;
    for (int k : search.best_set) {
        const Edge& e = search.edges[static_cast<size_t>(k)];
        res.witness.entries.push_back(PickedEdge{e.from, e.to, e.from});
    }
    std::sort(res.witness.entries.begin(), res.witness.entries.end(),
              [](const PickedEdge& a, const PickedEdge& b) {
                  return a.from != b.from ? a.from < b.from : a.to < b.to;
              });
    return res;
}

}  // namespace detail

/// Exact maximum matching weight of an edge-weighted instance, with witness.
/// Method `automatic` enumerates exhaustively up to the configured edge cap
/// and switches to branch-and-bound beyond it; forcing `exhaustive` past the
/// cap is an error.
inline OracleResult opt_edge_weighted(const Instance& inst, const OracleOptions& opts = {}) {
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("oracle: invalid instance: " + rep.joined());
    if (inst.mode != WeightMode::edge) {
        throw std::invalid_argument("oracle: opt_edge_weighted requires an edge-weighted instance");
    }
    return detail::solve_edge_optimum(inst, opts);
}

/// Exact maximum of sum of matched vertex weights, by reduction: each edge
/// (j,i) gets weight w_j + w_i and the edge-weighted optimum is computed on
/// the reduced instance. The witness is valid for the original instance.
inline OracleResult opt_vertex_weighted(const Instance& inst, const OracleOptions& opts = {}) {
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("oracle: invalid instance: " + rep.joined());
    if (inst.mode != WeightMode::vertex) {
        throw std::invalid_argument("oracle: opt_vertex_weighted requires a vertex-weighted instance");
    }
    Instance reduced;
    reduced.n = inst.n;
    reduced.d = inst.d;
    reduced.mode = WeightMode::edge;
    reduced.edges = inst.edges;
    for (Edge& e : reduced.edges) {
        e.weight = inst.vertex_weight(e.from) + inst.vertex_weight(e.to);
    }
    return detail::solve_edge_optimum(reduced, opts);
}

/// Dispatches on the instance's weight mode.
inline OracleResult optimum(const Instance& inst, const OracleOptions& opts = {}) {
    return inst.mode == WeightMode::edge ? opt_edge_weighted(inst, opts)
                                         : opt_vertex_weighted(inst, opts);
}

/// All matchings of the instance (the empty one included), as edge subsets
/// with pairwise-disjoint endpoints. A test oracle: the edge count is capped
/// at 20.
inline std::vector<Matching> enumerate_matchings(const Instance& inst) {
    constexpr size_t kCap = 20;
    if (inst.edges.size() > kCap) {
        throw std::invalid_argument("enumerate_matchings: " + std::to_string(inst.edges.size()) +
                                    " edges exceed the cap of " + std::to_string(kCap));
    }
    std::vector<Matching> out;
    std::vector<char> used(static_cast<size_t>(inst.n) + 1, 0);
    Matching current;
    auto recurse = [&](auto&& self, size_t pos) -> void {
        out.push_back(current);
        for (size_t k = pos; k < inst.edges.size(); ++k) {
            const Edge& e = inst.edges[k];
            if (used[static_cast<size_t>(e.from)] != 0 || used[static_cast<size_t>(e.to)] != 0) continue;
            used[static_cast<size_t>(e.from)] = used[static_cast<size_t>(e.to)] = 1;
            current.entries.push_back(PickedEdge{e.from, e.to, e.from});
            self(self, k + 1);
            current.entries.pop_back();
            used[static_cast<size_t>(e.from)] = used[static_cast<size_t>(e.to)] = 0;
        }
    };
    recurse(recurse, 0);
    return out;
}

}  // namespace ownbm
