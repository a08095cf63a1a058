#pragma once

#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace ownbm {

/// Vertices are identified by arrival index 1..n; vertex i arrives at time step i.
using VertexId = int;
using TimeStep = int;

enum class WeightMode { edge, vertex };

inline const char* to_string(WeightMode m) {
    return m == WeightMode::edge ? "edge" : "vertex";
}

/// Default random engine for all seeded runs. One generator per run;
/// draws are consumed in a documented order so any trial can be replayed.
using Rng = std::mt19937_64;

/// Fair coin from the low bit of the next engine word.
/// Stub engines used in tests must produce full 64-bit words.
template <class URBG>
bool coin(URBG& rng) {
    return (static_cast<std::uint64_t>(rng()) & 1u) != 0;
}

/// Uniform draw in [0,1) from the top 53 bits of the next engine word.
/// Avoids std::uniform_real_distribution, whose output is
/// implementation-defined and would break replay across toolchains.
template <class URBG>
double uniform01(URBG& rng) {
    return static_cast<double>(static_cast<std::uint64_t>(rng()) >> 11) * 0x1.0p-53;
}

/// Shortest round-trip decimal form of a double ("6.5", "18", "0.1").
/// Locale-independent; used for CSV cells and human-readable numbers.
inline std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{}) throw std::runtime_error("fmt_double: to_chars failed");
    return std::string(buf, res.ptr);
}

}  // namespace ownbm
