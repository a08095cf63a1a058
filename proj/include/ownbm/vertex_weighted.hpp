#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ownbm/instance.hpp"
#include "ownbm/structures.hpp"

namespace ownbm {

enum class Branch : unsigned char { origin, destination };

inline const char* to_string(Branch b) {
    return b == Branch::origin ? "origin" : "destination";
}

/// Perturbed vertex score w_k * (1 - e^{Y_k - 1}). Monotone decreasing in Y;
/// ranges over [0, w * (1 - 1/e)].
inline double perturbed_score(double weight, double y) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw std::invalid_argument("perturbed_score: Y must lie in [0,1]");
    }
    if (!(weight >= 0.0)) {
        throw std::invalid_argument("perturbed_score: weight must be non-negative");
    }
    return weight * (1.0 - std::exp(y - 1.0));
}

/// Randomized perturbed greedy over the arrival stream, one branch per run.
/// Every vertex draws a perturbation Y at its processing step (one draw per
/// step, dummies included, so a run's randomness stream replays exactly).
/// The destination branch matches each arriving vertex to its best white
/// earlier neighbour immediately; the origin branch waits until a vertex's
/// window closes at t = i + d and matches it to its best white later
/// neighbour, with d zero-weight dummy arrivals flushing the final windows.
/// Argmax ties go to the lowest vertex index; a nonempty neighbourhood
/// always yields an edge, even at score zero.
class PerturbedGreedy {
public:
    PerturbedGreedy(const Instance& inst, Branch branch)
        : inst_(&inst),
          idx_(inst),
          branch_(branch),
          y_(static_cast<size_t>(inst.n + inst.d) + 1, 0.0),
          black_(static_cast<size_t>(inst.n) + 1, false) {}

    Branch branch() const { return branch_; }

    /// Perturbation drawn for vertex (or dummy time step) v so far.
    double y_of(VertexId v) const { return y_.at(static_cast<size_t>(v)); }

    bool is_black(VertexId v) const { return black_.at(static_cast<size_t>(v)); }

    /// Destination-branch step for arriving vertex j: draws Y_j, then matches
    /// j to the white earlier neighbour with the best perturbed score, if any,
    /// colouring that neighbour black. Picked at time j.
    template <class URBG>
    std::optional<PickedEdge> destination_step(VertexId j, URBG& rng) {
        require_branch(Branch::destination);
        advance_clock(j, inst_->n);
        y_[static_cast<size_t>(j)] = uniform01(rng);
        VertexId best = 0;
        double best_score = -1.0;
        for (const Edge& e : idx_.out[static_cast<size_t>(j)]) {
            if (black_[static_cast<size_t>(e.to)]) continue;
            const double s = perturbed_score(inst_->vertex_weight(e.to), y_[static_cast<size_t>(e.to)]);
            if (s > best_score) {
                best_score = s;
                best = e.to;
            }
        }
        if (best == 0) return std::nullopt;
        black_[static_cast<size_t>(best)] = true;
        return PickedEdge{j, best, j};
    }

    /// Origin-branch step for time t = 1 .. n + d: draws Y_t (dummy steps
    /// t > n included), then — once i = t − d is a real vertex — matches i to
    /// the white later neighbour with the best perturbed score, if any,
    /// colouring that origin black. Picked at time t = i + d.
    template <class URBG>
    std::optional<PickedEdge> origin_step(TimeStep t, URBG& rng) {
        require_branch(Branch::origin);
        advance_clock(t, inst_->n + inst_->d);
        y_[static_cast<size_t>(t)] = uniform01(rng);
        const VertexId i = t - inst_->d;
        if (i < 1) return std::nullopt;
        VertexId best = 0;
        double best_score = -1.0;
        for (const Edge& e : idx_.in[static_cast<size_t>(i)]) {
            if (black_[static_cast<size_t>(e.from)]) continue;
            const double s =
                perturbed_score(inst_->vertex_weight(e.from), y_[static_cast<size_t>(e.from)]);
            if (s > best_score) {
                best_score = s;
                best = e.from;
            }
        }
        if (best == 0) return std::nullopt;
        black_[static_cast<size_t>(best)] = true;
        return PickedEdge{best, i, t};
    }

private:
    void require_branch(Branch expected) const {
        if (branch_ != expected) {
            throw std::logic_error(std::string("perturbed greedy: step called on the ") +
                                   to_string(branch_) + " branch");
        }
    }

    void advance_clock(TimeStep t, TimeStep last) {
        if (t != next_time_ || t > last) {
            throw std::logic_error("perturbed greedy: expected step " + std::to_string(next_time_) +
                                   ", got " + std::to_string(t));
        }
        ++next_time_;
    }

    const Instance* inst_;
    AdjacencyIndex idx_;
    Branch branch_;
    std::vector<double> y_;
    std::vector<bool> black_;
    TimeStep next_time_ = 1;
};

/// Half-weight of a semi-matching: the sum over its entries of only the
/// origin weights (origin branch) or only the terminal weights (destination
/// branch). Terms are accumulated in ascending vertex order; every counted
/// vertex is placed by the 3-matching builder and never evicted, so with
/// both sums ordered this way the 3-matching weight dominates the half-weight
/// exactly, floating point included.
inline double half_weight(const Instance& inst, const SemiMatching& sm, Branch branch) {
    std::vector<VertexId> counted;
    for (const PickedEdge& pe : sm.entries) {
        const VertexId v = branch == Branch::origin ? pe.from : pe.to;
        if (!inst.has_vertex(v)) {
            throw std::invalid_argument("half_weight: vertex outside instance");
        }
        counted.push_back(v);
    }
    std::sort(counted.begin(), counted.end());
    double total = 0.0;
    for (VertexId v : counted) total += inst.vertex_weight(v);
    return total;
}

/// Online 3-matching over a streamed semi-matching. Semi-matching edges
/// strictly decrease in vertex index, so the structure is a union of simple
/// directed paths; each vertex i is processed once, at time i + d, when both
/// its incoming and outgoing entries are final. Sets are contiguous
/// sub-paths, stored head-first (descending index):
///   - i unplaced with incoming (j,i): new pair {j,i};
///   - i in a pair (it entered head-first via its out-edge): extend to the
///     triple {j,i,x};
///   - i heading a triple: pop i first (deleting edge (i,x) exactly at its
///     deadline i + d), the remnant pair is the path edge (x,y), then place
///     {j,i} as a fresh pair.
/// Placed vertices are never evicted, so the final weight dominates the
/// half-weight of either branch.
class ThreeMatchingBuilder {
public:
    explicit ThreeMatchingBuilder(const Instance& inst)
        : inst_(&inst), set_of_(static_cast<size_t>(inst.n) + 1, -1) {}

    /// Processes vertex i at its deadline with its incoming semi-matching
    /// entry, if any. Entries must carry to == i.
    void process_vertex(VertexId i, TimeStep time, const std::optional<PickedEdge>& in_edge) {
        if (i != next_vertex_) {
            throw std::logic_error("3-matching: expected vertex " + std::to_string(next_vertex_) +
                                   ", got " + std::to_string(i));
        }
        ++next_vertex_;
        if (time != i + inst_->d) {
            throw std::logic_error("3-matching: vertex " + std::to_string(i) + " processes at " +
                                   std::to_string(i + inst_->d) + ", not " + std::to_string(time));
        }
        if (!in_edge) return;
        if (in_edge->to != i) {
            throw std::logic_error("3-matching: entry " + edge_str(in_edge->from, in_edge->to) +
                                   " fed to vertex " + std::to_string(i));
        }
        const VertexId j = in_edge->from;
        int s = set_of_[static_cast<size_t>(i)];
        if (s >= 0) {
            auto& members = sets_[static_cast<size_t>(s)];
            if (members.front() != i) {
                throw std::logic_error("3-matching: vertex " + std::to_string(i) +
                                       " is placed but not the head of its set");
            }
            if (members.size() == 3) {
                // Pop the head: its out-edge (i, members[1]) leaves the
                // 3-matching at time i + d, exactly its deletion deadline.
                log(time, ThreeMatchAction::delete_edge_and_repair, i, members[1], s);
                members.erase(members.begin());
                set_of_[static_cast<size_t>(i)] = -1;
                s = -1;
            } else {
                members.insert(members.begin(), j);
                set_of_[static_cast<size_t>(j)] = s;
                log(time, ThreeMatchAction::extend_to_triple, j, i, s);
                return;
            }
        }
        s = static_cast<int>(sets_.size());
        sets_.push_back({j, i});
        set_of_[static_cast<size_t>(j)] = s;
        set_of_[static_cast<size_t>(i)] = s;
        log(time, ThreeMatchAction::create_pair, j, i, s);
    }

    /// The structure built so far. Valid to call at any point; the final
    /// 3-matching is the value after all n vertices have been processed.
    ThreeMatching snapshot() const {
        ThreeMatching tm;
        tm.sets = sets_;
        tm.event_log = events_;
        return tm;
    }

    const std::vector<ThreeMatchEvent>& events() const { return events_; }

private:
    void log(TimeStep time, ThreeMatchAction action, VertexId from, VertexId to, int set_id) {
        events_.push_back(ThreeMatchEvent{time, action, from, to, set_id});
    }

    const Instance* inst_;
    std::vector<int> set_of_;
    std::vector<std::vector<VertexId>> sets_;
    std::vector<ThreeMatchEvent> events_;
    VertexId next_vertex_ = 1;
};

enum class VertexEventKind { branch_pick, draw, match, create_pair, extend_to_triple, delete_edge_and_repair };

inline const char* to_string(VertexEventKind k) {
    switch (k) {
        case VertexEventKind::branch_pick: return "branch_pick";
        case VertexEventKind::draw: return "draw";
        case VertexEventKind::match: return "match";
        case VertexEventKind::create_pair: return "create_pair";
        case VertexEventKind::extend_to_triple: return "extend_to_triple";
        case VertexEventKind::delete_edge_and_repair: return "delete_edge_and_repair";
    }
    return "?";
}

/// One record of the vertex-pipeline run log. Field use by kind:
/// branch_pick: branch; draw: vertex (time step for dummies), y;
/// match: from, to; set actions: from, to.
struct VertexEvent {
    TimeStep time = 0;
    VertexEventKind kind = VertexEventKind::draw;
    Branch branch = Branch::origin;
    VertexId vertex = 0;
    double y = 0.0;
    VertexId from = 0;
    VertexId to = 0;
};

struct VertexRunResult {
    Branch branch = Branch::origin;
    SemiMatching semi;
    ThreeMatching three_matching;
    std::vector<VertexEvent> events;
};

namespace detail {

template <class URBG>
VertexRunResult run_vertex_branch(const Instance& inst, Branch branch, URBG& rng) {
    VertexRunResult run;
    run.branch = branch;
    {
        VertexEvent ev;
        ev.time = 0;
        ev.kind = VertexEventKind::branch_pick;
        ev.branch = branch;
        run.events.push_back(ev);
    }
    PerturbedGreedy greedy(inst, branch);
    ThreeMatchingBuilder builder(inst);
    std::vector<std::optional<PickedEdge>> incoming(static_cast<size_t>(inst.n) + 1);
    const TimeStep horizon = branch == Branch::origin ? inst.n + inst.d : inst.n;
    for (TimeStep t = 1; t <= inst.n + inst.d; ++t) {
        std::optional<PickedEdge> picked;
        if (t <= horizon) {
            picked = branch == Branch::origin ? greedy.origin_step(t, rng)
                                              : greedy.destination_step(t, rng);
            VertexEvent ev;
            ev.time = t;
            ev.kind = VertexEventKind::draw;
            ev.vertex = t;
            ev.y = greedy.y_of(t);
            run.events.push_back(ev);
        }
        if (picked) {
            run.semi.entries.push_back(*picked);
            incoming[static_cast<size_t>(picked->to)] = *picked;
            VertexEvent ev;
            ev.time = t;
            ev.kind = VertexEventKind::match;
            ev.from = picked->from;
            ev.to = picked->to;
            run.events.push_back(ev);
        }
        const VertexId i = t - inst.d;
        if (i < 1 || i > inst.n) continue;
        const size_t seen = builder.events().size();
        builder.process_vertex(i, t, incoming[static_cast<size_t>(i)]);
        for (size_t e = seen; e < builder.events().size(); ++e) {
            const ThreeMatchEvent& tme = builder.events()[e];
            VertexEvent ev;
            ev.time = tme.time;
            switch (tme.action) {
                case ThreeMatchAction::create_pair: ev.kind = VertexEventKind::create_pair; break;
                case ThreeMatchAction::extend_to_triple:
                    ev.kind = VertexEventKind::extend_to_triple;
                    break;
                case ThreeMatchAction::delete_edge_and_repair:
                    ev.kind = VertexEventKind::delete_edge_and_repair;
                    break;
            }
            ev.from = tme.from;
            ev.to = tme.to;
            run.events.push_back(ev);
        }
    }
    run.three_matching = builder.snapshot();
    return run;
}

}  // namespace detail

/// Runs the full vertex-weighted pipeline: a fair coin picks the branch
/// (low random bit set → origin, clear → destination), the branch's steps
/// run over the arrival stream, and the semi-matching feeds the online
/// 3-matching builder as windows close. The 3-matching weight dominates the
/// half-weight on every run; in expectation the half-weight is at least
/// (1/2)(1 - 1/e) times the offline optimum.
template <class URBG>
VertexRunResult run_vertex_pipeline(const Instance& inst, URBG& rng) {
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("vertex pipeline: invalid instance: " + rep.joined());
    if (inst.mode != WeightMode::vertex) {
        throw std::invalid_argument("vertex pipeline: instance must be vertex-weighted");
    }
    const Branch branch = coin(rng) ? Branch::origin : Branch::destination;
    return detail::run_vertex_branch(inst, branch, rng);
}

/// Deterministic-branch variant used by tests and by the experiment
/// harness's branch accounting.
template <class URBG>
VertexRunResult run_vertex_pipeline(const Instance& inst, Branch branch, URBG& rng) {
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw std::invalid_argument("vertex pipeline: invalid instance: " + rep.joined());
    if (inst.mode != WeightMode::vertex) {
        throw std::invalid_argument("vertex pipeline: instance must be vertex-weighted");
    }
    return detail::run_vertex_branch(inst, branch, rng);
}

inline VertexRunResult run_vertex_pipeline(const Instance& inst, std::uint64_t seed) {
    Rng rng(seed);
    return run_vertex_pipeline(inst, rng);
}

}  // namespace ownbm
