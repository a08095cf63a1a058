#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ownbm/instance.hpp"
#include "ownbm/structures.hpp"

namespace ownbm {

/// Valuation of a bidder for an item set: the best weight among edges that
/// run from an item in the set to the bidder, clamped at 0. Bidders are the
/// terminals of edges, items their origins; bidder and item i both arrive
/// with vertex i.
inline double valuation(const Instance& inst, VertexId bidder, std::span<const VertexId> items) {
    if (!inst.has_vertex(bidder)) {
        throw std::invalid_argument("valuation: unknown bidder " + std::to_string(bidder));
    }
    double best = 0.0;
    for (VertexId j : items) {
        if (!inst.has_vertex(j)) {
            throw std::invalid_argument("valuation: unknown item " + std::to_string(j));
        }
        if (const Edge* e = inst.find_edge(j, bidder)) best = std::max(best, e->weight);
    }
    return best;
}

inline double valuation(const Instance& inst, VertexId bidder, std::initializer_list<VertexId> items) {
    return valuation(inst, bidder, std::span<const VertexId>(items.begin(), items.size()));
}

struct AllocationDecision {
    VertexId item = 0;
    VertexId bidder = 0;  // 0 when the item stays unallocated
    double marginal = 0.0;

    bool allocated() const { return bidder != 0; }
};

/// Greedy single-pass allocation of items to bidders with submodular
/// valuations. Items must be fed in arrival order; each item goes to the
/// bidder with the highest positive marginal valuation (lowest index wins
/// ties) or stays unallocated when every marginal is zero.
class Auction {
public:
    explicit Auction(const Instance& inst)
        : inst_(&inst),
          idx_(inst),
          items_(static_cast<size_t>(inst.n) + 1),
          val_(static_cast<size_t>(inst.n) + 1, 0.0),
          finalized_(static_cast<size_t>(inst.n) + 1, false) {}

    /// Current valuation val_i of a bidder (max edge weight over its items).
    double valuation_of(VertexId bidder) const { return val_.at(static_cast<size_t>(bidder)); }

    const std::vector<VertexId>& items_of(VertexId bidder) const {
        return items_.at(static_cast<size_t>(bidder));
    }

    /// Marginal gain for `bidder` from receiving `item`: max(0, w_(item,bidder) - val),
    /// and 0 when no such edge exists. Bidders that have not arrived when the
    /// item arrives cannot gain (no edge points forward), so no arrival check
    /// is needed.
    double marginal_valuation(VertexId bidder, VertexId item) const {
        const Edge* e = inst_->find_edge(item, bidder);
        if (e == nullptr) return 0.0;
        return std::max(0.0, e->weight - val_[static_cast<size_t>(bidder)]);
    }

    /// Processes the next arriving item. Throws if items arrive out of order
    /// or an item is offered twice.
    AllocationDecision allocate_item(VertexId item) {
        if (item != next_item_) {
            throw std::logic_error("allocate_item: expected item " + std::to_string(next_item_) +
                                   ", got " + std::to_string(item));
        }
        ++next_item_;
        AllocationDecision dec{item, 0, 0.0};
        for (const Edge& e : idx_.out[static_cast<size_t>(item)]) {
            const double m = std::max(0.0, e.weight - val_[static_cast<size_t>(e.to)]);
            if (m > dec.marginal) {
                dec.marginal = m;
                dec.bidder = e.to;
            }
        }
        if (dec.allocated()) {
            items_[static_cast<size_t>(dec.bidder)].push_back(item);
            val_[static_cast<size_t>(dec.bidder)] =
                inst_->find_edge(item, dec.bidder)->weight;
        }
        return dec;
    }

    /// Freezes bidder i once its window has closed (time must equal i + d)
    /// and converts its allocation into at most one semi-matching entry:
    /// the best-weight item edge, lowest item index on ties. Bidders with
    /// zero valuation contribute nothing.
    std::optional<PickedEdge> finalize_bidder(VertexId bidder, TimeStep time) {
        if (time != bidder + inst_->d) {
            throw std::logic_error("finalize_bidder: bidder " + std::to_string(bidder) +
                                   " freezes at " + std::to_string(bidder + inst_->d) + ", not " +
                                   std::to_string(time));
        }
        if (finalized_[static_cast<size_t>(bidder)]) {
            throw std::logic_error("finalize_bidder: bidder " + std::to_string(bidder) +
                                   " already finalized");
        }
        finalized_[static_cast<size_t>(bidder)] = true;
        if (val_[static_cast<size_t>(bidder)] <= 0.0) return std::nullopt;
        VertexId best_item = 0;
        double best_w = -1.0;
        for (VertexId j : items_[static_cast<size_t>(bidder)]) {
            const double w = inst_->find_edge(j, bidder)->weight;
            if (w > best_w) {
                best_w = w;
                best_item = j;
            }
        }
        return PickedEdge{best_item, bidder, time};
    }

    /// Sum of all bidder valuations; equals the weight of the semi-matching
    /// the finalize steps produce.
    double total_valuation() const {
        double total = 0.0;
        for (int i = 1; i <= inst_->n; ++i) total += val_[static_cast<size_t>(i)];
        return total;
    }

private:
    const Instance* inst_;
    AdjacencyIndex idx_;
    std::vector<std::vector<VertexId>> items_;
    std::vector<double> val_;
    std::vector<bool> finalized_;
    VertexId next_item_ = 1;
};

enum class Color : unsigned char { uncolored, green, red };

inline const char* to_string(Color c) {
    switch (c) {
        case Color::uncolored: return "uncolored";
        case Color::green: return "green";
        case Color::red: return "red";
    }
    return "?";
}

/// Online green/red rounding of a semi-matching into a matching. Entries are
/// fed as they are finalized; each vertex is processed once, in increasing
/// order, at its deadline. A vertex with an incoming entry takes the color
/// opposite to its outgoing partner when it has one, otherwise a fair coin,
/// and its incoming edge is kept iff the color is green.
class SemiMatchingRounder {
public:
    explicit SemiMatchingRounder(const Instance& inst)
        : inst_(&inst),
          in_from_(static_cast<size_t>(inst.n) + 1, 0),
          out_to_(static_cast<size_t>(inst.n) + 1, 0),
          color_(static_cast<size_t>(inst.n) + 1, Color::uncolored) {}

    /// Registers a finalized semi-matching entry. Must happen before the
    /// entry's terminal is processed.
    void add_entry(const PickedEdge& e) {
        if (e.to < next_vertex_) {
            throw std::logic_error("rounder: entry " + edge_str(e.from, e.to) +
                                   " arrived after its terminal was processed");
        }
        in_from_[static_cast<size_t>(e.to)] = e.from;
        out_to_[static_cast<size_t>(e.from)] = e.to;
    }

    /// Processes vertex i at its deadline; returns the matching entry when
    /// the incoming semi-matching edge is kept. The outgoing partner, when
    /// present, is always already colored; anything else means the fed
    /// structure was not a semi-matching.
    template <class URBG>
    std::optional<PickedEdge> color_and_round(VertexId i, TimeStep time, URBG& rng) {
        if (i != next_vertex_) {
            throw std::logic_error("rounder: expected vertex " + std::to_string(next_vertex_) +
                                   ", got " + std::to_string(i));
        }
        ++next_vertex_;
        const VertexId j = in_from_[static_cast<size_t>(i)];
        if (j == 0) return std::nullopt;  // no incoming entry: no color, no emit
        const VertexId k = out_to_[static_cast<size_t>(i)];
        if (k != 0) {
            const Color pk = color_[static_cast<size_t>(k)];
            if (pk == Color::uncolored) {
                throw std::logic_error("rounder: partner " + std::to_string(k) +
                                       " of vertex " + std::to_string(i) + " is uncolored");
            }
            color_[static_cast<size_t>(i)] = (pk == Color::green) ? Color::red : Color::green;
        } else {
            color_[static_cast<size_t>(i)] = coin(rng) ? Color::green : Color::red;
        }
        if (color_[static_cast<size_t>(i)] == Color::green) return PickedEdge{j, i, time};
        return std::nullopt;
    }

    Color color_of(VertexId v) const { return color_.at(static_cast<size_t>(v)); }

private:
    const Instance* inst_;
    std::vector<VertexId> in_from_;
    std::vector<VertexId> out_to_;
    std::vector<Color> color_;
    VertexId next_vertex_ = 1;
};

/// Rounds a complete semi-matching offline, processing vertices in order.
/// Matching entries are stamped with each terminal's deadline i + d.
template <class URBG>
Matching round_semi_matching(const Instance& inst, const SemiMatching& sm, URBG& rng) {
    SemiMatchingRounder rounder(inst);
    std::vector<std::vector<PickedEdge>> by_terminal(static_cast<size_t>(inst.n) + 1);
    for (const PickedEdge& e : sm.entries) by_terminal[static_cast<size_t>(e.to)].push_back(e);
    Matching m;
    for (VertexId i = 1; i <= inst.n; ++i) {
        for (const PickedEdge& e : by_terminal[static_cast<size_t>(i)]) rounder.add_entry(e);
        if (auto kept = rounder.color_and_round(i, i + inst.d, rng)) m.entries.push_back(*kept);
    }
    return m;
}

enum class EdgeEventKind { allocate, finalize, color, emit };

inline const char* to_string(EdgeEventKind k) {
    switch (k) {
        case EdgeEventKind::allocate: return "allocate";
        case EdgeEventKind::finalize: return "finalize";
        case EdgeEventKind::color: return "color";
        case EdgeEventKind::emit: return "emit";
    }
    return "?";
}

/// One record of the edge-pipeline run log. Field use by kind:
/// allocate: item, bidder (0 = unallocated); finalize/emit: from, to;
/// color: vertex, color.
struct EdgeEvent {
    TimeStep time = 0;
    EdgeEventKind kind = EdgeEventKind::allocate;
    VertexId item = 0;
    VertexId bidder = 0;
    VertexId from = 0;
    VertexId to = 0;
    VertexId vertex = 0;
    Color color = Color::uncolored;
};

struct EdgeRunResult {
    SemiMatching semi;
    Matching matching;
    std::vector<EdgeEvent> events;
};

/// Runs the full edge-weighted pipeline: the arrival stream drives the
/// greedy allocation, each vertex is frozen into at most one semi-matching
/// entry at its deadline, and the rounding pass commits matching edges
/// online. The clock runs to n + d so every vertex reaches its deadline.
/// The semi-matching weight is at least half the offline optimum on every
/// run; the matching keeps each entry with probability 1/2.
template <class URBG>
EdgeRunResult run_edge_pipeline(const Instance& inst, URBG& rng) {
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("edge pipeline: invalid instance: " + rep.joined());
    if (inst.mode != WeightMode::edge) {
        throw std::invalid_argument("edge pipeline: instance must be edge-weighted");
    }

    EdgeRunResult run;
    Auction auction(inst);
    SemiMatchingRounder rounder(inst);
    for (TimeStep t = 1; t <= inst.n + inst.d; ++t) {
        if (t <= inst.n) {
            AllocationDecision dec = auction.allocate_item(t);
            EdgeEvent ev;
            ev.time = t;
            ev.kind = EdgeEventKind::allocate;
            ev.item = dec.item;
            ev.bidder = dec.bidder;
            run.events.push_back(ev);
        }
        const VertexId i = t - inst.d;
        if (i < 1 || i > inst.n) continue;
        if (auto entry = auction.finalize_bidder(i, t)) {
            run.semi.entries.push_back(*entry);
            rounder.add_entry(*entry);
            EdgeEvent ev;
            ev.time = t;
            ev.kind = EdgeEventKind::finalize;
            ev.from = entry->from;
            ev.to = entry->to;
            run.events.push_back(ev);
        }
        if (auto kept = rounder.color_and_round(i, t, rng)) {
            run.matching.entries.push_back(*kept);
        }
        if (rounder.color_of(i) != Color::uncolored) {
            EdgeEvent ev;
            ev.time = t;
            ev.kind = EdgeEventKind::color;
            ev.vertex = i;
            ev.color = rounder.color_of(i);
            run.events.push_back(ev);
            if (rounder.color_of(i) == Color::green) {
                EdgeEvent em;
                em.time = t;
                em.kind = EdgeEventKind::emit;
                em.from = run.matching.entries.back().from;
                em.to = run.matching.entries.back().to;
                run.events.push_back(em);
            }
        }
    }
    return run;
}

inline EdgeRunResult run_edge_pipeline(const Instance& inst, std::uint64_t seed) {
    Rng rng(seed);
    return run_edge_pipeline(inst, rng);
}

}  // namespace ownbm
