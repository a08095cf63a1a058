#pragma once

// Shared fixtures, stub engines and independent brute-force oracles for the
// test suite. The oracles here deliberately use different algorithms than
// the library so the two sides check each other.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ownbm/instance.hpp"

namespace testers {

/// 4-vertex edge-weighted example: n=4, d=2,
/// edges (2,1)=5, (3,1)=7, (3,2)=4, (4,2)=6, (4,3)=3. Optimum 13.
inline ownbm::Instance running_example() {
    ownbm::Instance inst;
    inst.n = 4;
    inst.d = 2;
    inst.mode = ownbm::WeightMode::edge;
    inst.edges = {{2, 1, 5.0}, {3, 1, 7.0}, {3, 2, 4.0}, {4, 2, 6.0}, {4, 3, 3.0}};
    return inst;
}

/// Vertex-weighted instance A: n=3, d=2, w=[10,6,8],
/// edges (2,1), (3,1), (3,2). Optimum 18.
inline ownbm::Instance instance_a() {
    ownbm::Instance inst;
    inst.n = 3;
    inst.d = 2;
    inst.mode = ownbm::WeightMode::vertex;
    inst.vertex_weights = {10.0, 6.0, 8.0};
    inst.edges = {{2, 1, 0.0}, {3, 1, 0.0}, {3, 2, 0.0}};
    return inst;
}

/// Engine stub yielding a fixed word sequence; throws when exhausted so a
/// test consuming more randomness than scripted fails loudly.
struct ScriptedRng {
    using result_type = std::uint64_t;
    std::vector<std::uint64_t> words;
    size_t next = 0;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        if (next >= words.size()) throw std::runtime_error("ScriptedRng: out of scripted words");
        return words[next++];
    }
};

/// Engine stub yielding one constant word forever. Word 0 gives Y = 0 and
/// coin = false; word 1 gives coin = true.
struct ConstantRng {
    using result_type = std::uint64_t;
    std::uint64_t word = 0;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() const { return word; }
};

/// Brute-force maximum-weight matching by subset recursion over edges.
/// Independent of the library oracle's search order and bound.
inline double brute_force_matching_optimum(const ownbm::Instance& inst) {
    const auto& edges = inst.edges;
    std::vector<char> used(static_cast<size_t>(inst.n) + 1, 0);
    double best = 0.0;
    auto weight_of = [&](const ownbm::Edge& e) {
        return inst.mode == ownbm::WeightMode::edge
                   ? e.weight
                   : inst.vertex_weight(e.from) + inst.vertex_weight(e.to);
    };
    auto rec = [&](auto&& self, size_t k, double w) -> void {
        best = std::max(best, w);
        for (size_t i = k; i < edges.size(); ++i) {
            if (used[static_cast<size_t>(edges[i].from)] || used[static_cast<size_t>(edges[i].to)]) {
                continue;
            }
            used[static_cast<size_t>(edges[i].from)] = used[static_cast<size_t>(edges[i].to)] = 1;
            self(self, i + 1, w + weight_of(edges[i]));
            used[static_cast<size_t>(edges[i].from)] = used[static_cast<size_t>(edges[i].to)] = 0;
        }
    };
    rec(rec, 0, 0.0);
    return best;
}

/// Brute-force optimal allocation of items to bidders: every item goes to
/// one bidder reachable by an edge or stays unallocated; a bidder's value is
/// the best weight among its items. Equals the maximum-weight semi-matching.
inline double brute_force_allocation_optimum(const ownbm::Instance& inst) {
    ownbm::AdjacencyIndex idx(inst);
    std::vector<double> val(static_cast<size_t>(inst.n) + 1, 0.0);
    double best = 0.0;
    auto rec = [&](auto&& self, int item) -> void {
        if (item > inst.n) {
            double total = 0.0;
            for (int i = 1; i <= inst.n; ++i) total += val[static_cast<size_t>(i)];
            best = std::max(best, total);
            return;
        }
        self(self, item + 1);  // leave the item unallocated
        for (const ownbm::Edge& e : idx.out[static_cast<size_t>(item)]) {
            const double saved = val[static_cast<size_t>(e.to)];
            val[static_cast<size_t>(e.to)] = std::max(saved, e.weight);
            self(self, item + 1);
            val[static_cast<size_t>(e.to)] = saved;
        }
    };
    rec(rec, 1);
    return best;
}

}  // namespace testers
