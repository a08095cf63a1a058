#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ownbm/instance.hpp"

namespace ownbm {

/// Weight distribution for generated instances. Uniform draws are snapped to
/// a dyadic grid by default so that weight sums at experiment scale are
/// exact in double precision, which keeps "exactly"-style comparisons on
/// generated instances free of rounding ambiguity.
struct WeightSpec {
    enum class Kind : unsigned char { uniform, constant };
    Kind kind = Kind::uniform;
    double a = 0.0;            // uniform lower bound, or the constant value
    double b = 100.0;          // uniform upper bound
    double grid = 0x1.0p-20;   // snap step for uniform draws; 0 disables

    static WeightSpec uniform(double a, double b, double grid = 0x1.0p-20) {
        return WeightSpec{Kind::uniform, a, b, grid};
    }
    static WeightSpec constant(double c) { return WeightSpec{Kind::constant, c, c, 0.0}; }
};

struct GeneratorConfig {
    std::string kind = "random";  // random | geometric | adversarial:<name>
    int n = 0;
    int d = 1;
    WeightMode mode = WeightMode::edge;
    double density = 0.5;   // random kind: independent edge probability
    WeightSpec weights;     // random kind
    double tau = 1.0;       // geometric kind: detour threshold, >= 1
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_common(const GeneratorConfig& cfg) {
    if (cfg.n < 0) throw std::invalid_argument("generator: n must be non-negative");
    if (cfg.d < 1) throw std::invalid_argument("generator: d must be positive");
}

template <class URBG>
double draw_weight(const WeightSpec& spec, URBG& rng) {
    if (spec.kind == WeightSpec::Kind::constant) return spec.a;
    double w = spec.a + (spec.b - spec.a) * uniform01(rng);
    if (spec.grid > 0.0) w = std::llround(w / spec.grid) * spec.grid;
    return w;
}

inline void check_weights(const WeightSpec& spec) {
    if (spec.kind == WeightSpec::Kind::uniform && !(spec.a <= spec.b)) {
        throw std::invalid_argument("generator: uniform weight bounds must satisfy a <= b");
    }
    if (!(spec.a >= 0.0)) throw std::invalid_argument("generator: weights must be non-negative");
    if (!(spec.grid >= 0.0)) throw std::invalid_argument("generator: weight grid must be non-negative");
}

}  // namespace detail

/// Random instance: every ordered pair (j,i) with 0 < j - i <= d becomes an
/// edge independently with the configured probability. Pairs are visited
/// with j ascending and i ascending inside each window; vertex weights (when
/// in vertex mode) are drawn first, in vertex order, then the edge pass runs.
/// Identical config and seed reproduce the instance bit for bit.
inline Instance gen_random(const GeneratorConfig& cfg) {
    detail::check_common(cfg);
    detail::check_weights(cfg.weights);
    if (!(cfg.density >= 0.0 && cfg.density <= 1.0)) {
        throw std::invalid_argument("generator: density must lie in [0,1]");
    }
    Rng rng(cfg.seed);
    Instance inst;
    inst.n = cfg.n;
    inst.d = cfg.d;
    inst.mode = cfg.mode;
    if (cfg.mode == WeightMode::vertex) {
        inst.vertex_weights.reserve(static_cast<size_t>(cfg.n));
        for (int v = 1; v <= cfg.n; ++v) inst.vertex_weights.push_back(detail::draw_weight(cfg.weights, rng));
    }
    for (int j = 2; j <= cfg.n; ++j) {
        for (int i = std::max(1, j - cfg.d); i < j; ++i) {
            if (uniform01(rng) >= cfg.density) continue;
            Edge e{j, i, 0.0};
            if (cfg.mode == WeightMode::edge) e.weight = detail::draw_weight(cfg.weights, rng);
            inst.edges.push_back(e);
        }
    }
    return normalize(inst);
}

struct Point {
    double x = 0.0, y = 0.0;
};

inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// One ride request: a pickup and a dropoff in the plane.
struct Ride {
    Point pickup, dropoff;
};

inline double solo_length(const Ride& r) { return dist(r.pickup, r.dropoff); }

/// Length of the best single-vehicle route serving both rides with both
/// pickups before both dropoffs: the minimum over the four visit orders
/// (Pa Pb Qa Qb), (Pa Pb Qb Qa), (Pb Pa Qa Qb), (Pb Pa Qb Qa).
inline double shared_length(const Ride& a, const Ride& b) {
    const double pp = dist(a.pickup, b.pickup);
    const double o1 = pp + dist(b.pickup, a.dropoff) + dist(a.dropoff, b.dropoff);  // Pa Pb Qa Qb
    const double o2 = pp + dist(b.pickup, b.dropoff) + dist(b.dropoff, a.dropoff);  // Pa Pb Qb Qa
    const double o3 = pp + dist(a.pickup, a.dropoff) + dist(a.dropoff, b.dropoff);  // Pb Pa Qa Qb
    const double o4 = pp + dist(a.pickup, b.dropoff) + dist(b.dropoff, a.dropoff);  // Pb Pa Qb Qa
    return std::min(std::min(o1, o2), std::min(o3, o4));
}

/// Distance saved by serving both rides in one vehicle instead of two;
/// symmetric in the pair, positive exactly when sharing beats two solo trips.
inline double saving(const Ride& a, const Ride& b) {
    return solo_length(a) + solo_length(b) - shared_length(a, b);
}

/// Geometric ride-sharing instance: each vertex is a ride with pickup and
/// dropoff uniform in the unit square (four coordinate draws per vertex, in
/// vertex order). An admissible pair (j,i) becomes an edge iff sharing saves
/// distance and the shared route stays within tau times the combined solo
/// lengths. Edge weight = the saving (edge mode); vertex weight = the solo
/// length (vertex mode).
inline Instance gen_geometric_rides(const GeneratorConfig& cfg) {
    detail::check_common(cfg);
    if (!(cfg.tau >= 1.0)) throw std::invalid_argument("generator: tau must be at least 1");
    Rng rng(cfg.seed);
    std::vector<Ride> rides(static_cast<size_t>(cfg.n) + 1);
    for (int v = 1; v <= cfg.n; ++v) {
        Ride& r = rides[static_cast<size_t>(v)];
        r.pickup.x = uniform01(rng);
        r.pickup.y = uniform01(rng);
        r.dropoff.x = uniform01(rng);
        r.dropoff.y = uniform01(rng);
    }
    Instance inst;
    inst.n = cfg.n;
    inst.d = cfg.d;
    inst.mode = cfg.mode;
    if (cfg.mode == WeightMode::vertex) {
        for (int v = 1; v <= cfg.n; ++v) {
            inst.vertex_weights.push_back(solo_length(rides[static_cast<size_t>(v)]));
        }
    }
    for (int j = 2; j <= cfg.n; ++j) {
        for (int i = std::max(1, j - cfg.d); i < j; ++i) {
            const Ride& rj = rides[static_cast<size_t>(j)];
            const Ride& ri = rides[static_cast<size_t>(i)];
            const double solo_sum = solo_length(rj) + solo_length(ri);
            const double shared = shared_length(rj, ri);
            const double saved = solo_sum - shared;
            if (saved <= 0.0 || shared > cfg.tau * solo_sum) continue;
            Edge e{j, i, 0.0};
            if (cfg.mode == WeightMode::edge) e.weight = saved;
            inst.edges.push_back(e);
        }
    }
    return normalize(inst);
}

/// Fixed hard instances by name.
///   path-chain: n=6, d=1, unit-weight edges (2,1) .. (6,5) — one long
///     semi-matching path, the worst case for rounding variance.
///   greedy-trap: n=4, d=2, edges (3,1) w=1, (3,2) w=1+eps, (4,2) w=1+eps
///     with eps = 2^-10 — the greedy allocation sends item 3 to bidder 2 and
///     leaves item 4 worthless, reaching (1+eps)/(2+eps) of the optimal
///     allocation, which tends to 1/2 as eps goes to 0.
inline Instance gen_adversarial(std::string_view name) {
    constexpr double kEps = 0x1.0p-10;
    Instance inst;
    inst.mode = WeightMode::edge;
    if (name == "path-chain") {
        inst.n = 6;
        inst.d = 1;
        for (int j = 2; j <= 6; ++j) inst.edges.push_back(Edge{j, j - 1, 1.0});
    } else if (name == "greedy-trap") {
        inst.n = 4;
        inst.d = 2;
        inst.edges = {Edge{3, 1, 1.0}, Edge{3, 2, 1.0 + kEps}, Edge{4, 2, 1.0 + kEps}};
    } else {
        throw std::invalid_argument("generator: unknown adversarial instance \"" + std::string(name) +
                                    "\"");
    }
    return normalize(inst);
}

inline const std::vector<std::string>& adversarial_catalog() {
    static const std::vector<std::string> names = {"greedy-trap", "path-chain"};
    return names;
}

/// Dispatches on cfg.kind ("random", "geometric", or "adversarial:<name>").
/// Adversarial instances are fixed: n, d, weights and seed in the config are
/// ignored for them.
inline Instance generate(const GeneratorConfig& cfg) {
    if (cfg.kind == "random") return gen_random(cfg);
    if (cfg.kind == "geometric") return gen_geometric_rides(cfg);
    constexpr std::string_view prefix = "adversarial:";
    if (cfg.kind.size() > prefix.size() && std::string_view(cfg.kind).substr(0, prefix.size()) == prefix) {
        return gen_adversarial(std::string_view(cfg.kind).substr(prefix.size()));
    }
    throw std::invalid_argument("generator: unknown kind \"" + cfg.kind + "\"");
}

namespace detail {

inline double parse_double(std::string_view s, std::string_view what) {
    double value = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("generator spec: bad " + std::string(what) + " \"" + std::string(s) +
                                    "\"");
    }
    return value;
}

inline std::int64_t parse_int(std::string_view s, std::string_view what) {
    std::int64_t value = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("generator spec: bad " + std::string(what) + " \"" + std::string(s) +
                                    "\"");
    }
    return value;
}

}  // namespace detail

/// Parses a compact generator spec of the form
///   kind=random;n=8;d=2;mode=edge;p=0.6;w=uniform:0:100;seed=7
/// Keys: kind, n, d, mode (edge|vertex), p (density), w (uniform:a:b or
/// constant:c), grid (snap step for uniform weights), tau, seed. Unknown
/// keys are rejected.
inline GeneratorConfig parse_generator_spec(std::string_view spec) {
    GeneratorConfig cfg;
    size_t pos = 0;
    while (pos <= spec.size()) {
        const size_t semi = std::min(spec.find(';', pos), spec.size());
        const std::string_view item = spec.substr(pos, semi - pos);
        pos = semi + 1;
        if (item.empty()) continue;
        const size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("generator spec: expected key=value, got \"" + std::string(item) +
                                        "\"");
        }
        const std::string_view key = item.substr(0, eq);
        const std::string_view value = item.substr(eq + 1);
        if (key == "kind") {
            cfg.kind = std::string(value);
        } else if (key == "n") {
            cfg.n = static_cast<int>(detail::parse_int(value, "n"));
        } else if (key == "d") {
            cfg.d = static_cast<int>(detail::parse_int(value, "d"));
        } else if (key == "mode") {
            if (value == "edge") {
                cfg.mode = WeightMode::edge;
            } else if (value == "vertex") {
                cfg.mode = WeightMode::vertex;
            } else {
                throw std::invalid_argument("generator spec: mode must be edge or vertex");
            }
        } else if (key == "p") {
            cfg.density = detail::parse_double(value, "density");
        } else if (key == "w") {
            const size_t c1 = value.find(':');
            const std::string_view head = value.substr(0, c1);
            if (head == "constant") {
                if (c1 == std::string_view::npos) {
                    throw std::invalid_argument("generator spec: constant weight needs a value");
                }
                cfg.weights = WeightSpec::constant(detail::parse_double(value.substr(c1 + 1), "weight"));
            } else if (head == "uniform") {
                const size_t c2 = c1 == std::string_view::npos ? std::string_view::npos
                                                               : value.find(':', c1 + 1);
                if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
                    throw std::invalid_argument("generator spec: uniform weights need uniform:a:b");
                }
                const double grid = cfg.weights.grid;
                cfg.weights = WeightSpec::uniform(
                    detail::parse_double(value.substr(c1 + 1, c2 - c1 - 1), "weight bound"),
                    detail::parse_double(value.substr(c2 + 1), "weight bound"), grid);
            } else {
                throw std::invalid_argument("generator spec: weight spec must be uniform:a:b or constant:c");
            }
        } else if (key == "grid") {
            cfg.weights.grid = detail::parse_double(value, "grid");
        } else if (key == "tau") {
            cfg.tau = detail::parse_double(value, "tau");
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(detail::parse_int(value, "seed"));
        } else {
            throw std::invalid_argument("generator spec: unknown key \"" + std::string(key) + "\"");
        }
    }
    return cfg;
}

}  // namespace ownbm
