// sampling.hpp - seeded Bernoulli subset sampling with a bounded resampling window.

#ifndef ADO_SAMPLING_HPP
#define ADO_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ado/graph.hpp"

namespace ado {

// mt19937_64 is specified bit-for-bit by the standard, so seeds reproduce across platforms.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; avoids implementation-defined
// distribution objects.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline constexpr int kMaxSampleRetries = 32;

// Keeps each member of `universe` independently with probability target/|universe|,
// redrawing (up to kMaxSampleRetries times) until the size lands in
// [target/2, 2*target]. If no draw lands in the window, the draw closest to the
// target is kept; an empty result is replaced by one uniformly chosen member.
// Output preserves universe order.
inline std::vector<Vertex> sample_subset(std::span<const Vertex> universe, double target_size, Rng& rng) {
    if (universe.empty()) throw std::invalid_argument("sample_subset: empty universe");
    if (!(target_size > 0.0) || target_size > static_cast<double>(universe.size())) {
        throw std::invalid_argument("sample_subset: target size out of range (0, |universe|]");
    }
    const double p = target_size / static_cast<double>(universe.size());
    const double lo = target_size / 2.0;
    const double hi = 2.0 * target_size;

    std::vector<Vertex> best;
    double best_gap = kInfinity;
    for (int attempt = 0; attempt < kMaxSampleRetries; ++attempt) {
        std::vector<Vertex> draw;
        draw.reserve(static_cast<std::size_t>(hi) + 1);
        for (Vertex v : universe) {
            if (p >= 1.0 || uniform01(rng) < p) draw.push_back(v);
        }
        const double size = static_cast<double>(draw.size());
        if (!draw.empty() && size >= lo && size <= hi) return draw;
        const double gap = draw.empty() ? kInfinity : std::abs(std::log(size / target_size));
        if (gap < best_gap || best.empty()) {
            best_gap = gap;
            best = std::move(draw);
        }
    }
    if (best.empty()) best.push_back(universe[uniform_below(rng, universe.size())]);
    return best;
}

inline std::vector<Vertex> all_vertices(std::size_t n) {
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
    return v;
}

}  // namespace ado

#endif  // ADO_SAMPLING_HPP
