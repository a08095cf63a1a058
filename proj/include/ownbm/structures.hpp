#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ownbm/instance.hpp"

namespace ownbm {

/// An edge committed by an online algorithm, tagged with the time step at
/// which it was committed. The matching-window contract is
/// pick_time <= terminal + d, and an edge cannot be picked before its
/// origin has arrived.
struct PickedEdge {
    VertexId from = 0;
    VertexId to = 0;
    TimeStep pick_time = 0;

    friend bool operator==(const PickedEdge&, const PickedEdge&) = default;
};

/// Edge set with at most one outgoing and at most one incoming edge per
/// vertex; the intermediate structure both pipelines produce.
struct SemiMatching {
    std::vector<PickedEdge> entries;

    friend bool operator==(const SemiMatching&, const SemiMatching&) = default;
};

/// Edge set with at most one edge incident on each vertex in any role.
/// Entries are never retracted.
struct Matching {
    std::vector<PickedEdge> entries;

    friend bool operator==(const Matching&, const Matching&) = default;
};

enum class ThreeMatchAction { create_pair, extend_to_triple, delete_edge_and_repair };

inline const char* to_string(ThreeMatchAction a) {
    switch (a) {
        case ThreeMatchAction::create_pair: return "create_pair";
        case ThreeMatchAction::extend_to_triple: return "extend_to_triple";
        case ThreeMatchAction::delete_edge_and_repair: return "delete_edge_and_repair";
    }
    return "?";
}

struct ThreeMatchEvent {
    TimeStep time = 0;
    ThreeMatchAction action = ThreeMatchAction::create_pair;
    VertexId from = 0;  // edge payload: created/extending/deleted edge
    VertexId to = 0;
    int set_id = 0;

    friend bool operator==(const ThreeMatchEvent&, const ThreeMatchEvent&) = default;
};

/// Disjoint vertex sets of size 2 or 3. Every 2-set is an instance edge and
/// every 3-set induces at least 2 instance edges. Sets are stored in path
/// order (descending vertex index). The event log records every structural
/// action with its time step; deletions of an edge (j,i) must happen no
/// later than j + d.
struct ThreeMatching {
    std::vector<std::vector<VertexId>> sets;
    std::vector<ThreeMatchEvent> event_log;

    friend bool operator==(const ThreeMatching&, const ThreeMatching&) = default;
};

namespace detail {

inline void check_picked_edges(const Instance& inst, const std::vector<PickedEdge>& entries,
                               ValidationReport& rep) {
    for (const PickedEdge& pe : entries) {
        const std::string es = edge_str(pe.from, pe.to);
        if (inst.find_edge(pe.from, pe.to) == nullptr) {
            rep.add("entry " + es + ": not an instance edge");
            continue;
        }
        if (pe.pick_time > pe.to + inst.d) {
            rep.add("entry " + es + ": picked at " + std::to_string(pe.pick_time) +
                    " after deadline " + std::to_string(pe.to + inst.d));
        }
        if (pe.pick_time < pe.from) {
            rep.add("entry " + es + ": picked at " + std::to_string(pe.pick_time) +
                    " before origin arrival " + std::to_string(pe.from));
        }
    }
}

}  // namespace detail

/// Checks the semi-matching invariants: at most one entry originates at and
/// at most one terminates at any vertex, entries are instance edges, and
/// every pick respects the matching-window deadline.
inline ValidationReport validate_semi_matching(const Instance& inst, const SemiMatching& sm) {
    ValidationReport rep;
    std::vector<int> out_deg(static_cast<size_t>(inst.n) + 1, 0);
    std::vector<int> in_deg(static_cast<size_t>(inst.n) + 1, 0);
    detail::check_picked_edges(inst, sm.entries, rep);
    for (const PickedEdge& pe : sm.entries) {
        if (!inst.has_vertex(pe.from) || !inst.has_vertex(pe.to)) continue;
        if (++out_deg[static_cast<size_t>(pe.from)] == 2) {
            rep.add("vertex " + std::to_string(pe.from) + ": two outgoing entries");
        }
        if (++in_deg[static_cast<size_t>(pe.to)] == 2) {
            rep.add("vertex " + std::to_string(pe.to) + ": two incoming entries");
        }
    }
    return rep;
}

/// Checks the matching invariants: every vertex appears in at most one entry
/// in any role, entries are instance edges, and picks meet their deadlines.
inline ValidationReport validate_matching(const Instance& inst, const Matching& m) {
    ValidationReport rep;
    std::vector<int> deg(static_cast<size_t>(inst.n) + 1, 0);
    detail::check_picked_edges(inst, m.entries, rep);
    for (const PickedEdge& pe : m.entries) {
        for (VertexId v : {pe.from, pe.to}) {
            if (!inst.has_vertex(v)) continue;
            if (++deg[static_cast<size_t>(v)] == 2) {
                rep.add("vertex " + std::to_string(v) + " incident twice");
            }
        }
    }
    return rep;
}

/// Checks the 3-matching invariants: sets of size 2 or 3, pairwise disjoint,
/// 2-sets are instance edges, 3-sets induce at least 2 instance edges, and
/// every recorded deletion of an edge (j,i) happened no later than j + d.
inline ValidationReport validate_three_matching(const Instance& inst, const ThreeMatching& tm) {
    ValidationReport rep;
    std::vector<int> seen(static_cast<size_t>(inst.n) + 1, 0);
    for (size_t s = 0; s < tm.sets.size(); ++s) {
        const auto& set = tm.sets[s];
        const std::string tag = "set #" + std::to_string(s + 1);
        if (set.size() != 2 && set.size() != 3) {
            rep.add(tag + ": size must be 2 or 3, got " + std::to_string(set.size()));
            continue;
        }
        bool in_range = true;
        for (VertexId v : set) {
            if (!inst.has_vertex(v)) {
                rep.add(tag + ": vertex " + std::to_string(v) + " outside 1.." + std::to_string(inst.n));
                in_range = false;
            } else if (++seen[static_cast<size_t>(v)] == 2) {
                rep.add(tag + ": vertex " + std::to_string(v) + " appears in two sets");
            }
        }
        if (!in_range) continue;
        int induced = 0;
        for (size_t a = 0; a < set.size(); ++a) {
            for (size_t b = a + 1; b < set.size(); ++b) {
                VertexId hi = std::max(set[a], set[b]);
                VertexId lo = std::min(set[a], set[b]);
                if (inst.find_edge(hi, lo) != nullptr) ++induced;
            }
        }
        if (set.size() == 2 && induced < 1) rep.add(tag + ": 2-set is not an instance edge");
        if (set.size() == 3 && induced < 2) rep.add(tag + ": 3-set needs >= 2 induced edges, has " +
                                                    std::to_string(induced));
    }
    for (const ThreeMatchEvent& ev : tm.event_log) {
        if (ev.action == ThreeMatchAction::delete_edge_and_repair && ev.time > ev.from + inst.d) {
            rep.add("edge " + edge_str(ev.from, ev.to) + ": deleted at " + std::to_string(ev.time) +
                    " after deadline " + std::to_string(ev.from + inst.d));
        }
    }
    return rep;
}

namespace detail {

inline double entry_weight_sum(const Instance& inst, const std::vector<PickedEdge>& entries) {
    double total = 0.0;
    if (inst.mode == WeightMode::edge) {
        for (const PickedEdge& pe : entries) {
            const Edge* e = inst.find_edge(pe.from, pe.to);
            if (e == nullptr) throw std::invalid_argument("measure: entry " + edge_str(pe.from, pe.to) +
                                                          " is not an instance edge");
            total += e->weight;
        }
    } else {
        for (const PickedEdge& pe : entries) {
            if (!inst.has_vertex(pe.from) || !inst.has_vertex(pe.to)) {
                throw std::invalid_argument("measure: entry endpoint outside instance");
            }
            total += inst.vertex_weight(pe.from) + inst.vertex_weight(pe.to);
        }
    }
    return total;
}

}  // namespace detail

/// Weight of a semi-matching: sum of edge weights (edge mode) or sum of both
/// endpoint weights per entry (vertex mode). Empty structures measure 0.
inline double measure(const Instance& inst, const SemiMatching& sm) {
    return detail::entry_weight_sum(inst, sm.entries);
}

/// Weight of a matching, analogous to the semi-matching measure.
inline double measure(const Instance& inst, const Matching& m) {
    return detail::entry_weight_sum(inst, m.entries);
}

/// Weight of a 3-matching: sum of the weights of all vertices included in
/// any set. Defined for vertex mode only. Terms are accumulated in ascending
/// vertex order so that sums over nested vertex sets compare monotonically
/// even in floating point.
inline double measure(const Instance& inst, const ThreeMatching& tm) {
    if (inst.mode != WeightMode::vertex) {
        throw std::invalid_argument("measure: 3-matching weight requires a vertex-weighted instance");
    }
    std::vector<VertexId> members;
    for (const auto& set : tm.sets) {
        for (VertexId v : set) {
            if (!inst.has_vertex(v)) throw std::invalid_argument("measure: vertex outside instance");
            members.push_back(v);
        }
    }
    std::sort(members.begin(), members.end());
    double total = 0.0;
    for (VertexId v : members) total += inst.vertex_weight(v);
    return total;
}

}  // namespace ownbm
