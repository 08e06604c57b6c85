// bunch_oracle.hpp - Thorup-Zwick level sets, pivots and bunches, plus the alternating
// bunch query. The same structure backs the classic oracle and both parameterized ones.

#ifndef ADO_BUNCH_ORACLE_HPP
#define ADO_BUNCH_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ado/graph.hpp"
#include "ado/sampling.hpp"
#include "ado/shortest_paths.hpp"

namespace ado {

enum class OracleMode : std::uint8_t {
    classic = 0,         // A_0 = V, A_1..A_{k-1} sampled, tables for every vertex
    parameterized = 1,   // A_0 = V, A_1 = S, A_2..A_k sampled inside S, B_0(u) = {u}
    restricted = 2,      // as parameterized, tables kept only for members of S
};

inline const char* to_string(OracleMode m) {
    switch (m) {
        case OracleMode::classic: return "classic";
        case OracleMode::parameterized: return "parameterized";
        case OracleMode::restricted: return "restricted";
    }
    return "?";
}

// Nested sets A_0 ⊇ A_1 ⊇ ... ⊇ A_{L-1}, with A_L = ∅ implicit.
struct Levels {
    std::vector<std::vector<Vertex>> sets;  // each sorted ascending
    std::vector<std::uint8_t> top;          // top[v] = max i with v ∈ A_i

    std::size_t count() const { return sets.size(); }
    bool contains(std::size_t i, Vertex v) const { return i < sets.size() && top[v] >= i; }

    // Validates nesting and fills `top`. A_0 must be the full vertex set.
    static Levels from_sets(std::size_t n, std::vector<std::vector<Vertex>> sets) {
        if (sets.empty()) throw std::invalid_argument("levels: need at least A_0");
        if (sets.size() > 255) throw std::invalid_argument("levels: too many levels");
        Levels lv;
        lv.top.assign(n, 0);
        for (auto& s : sets) std::sort(s.begin(), s.end());
        if (sets[0].size() != n) throw std::invalid_argument("levels: A_0 must be V");
        for (std::size_t i = 1; i < sets.size(); ++i) {
            if (sets[i].empty()) throw std::invalid_argument("levels: empty level " + std::to_string(i));
            for (Vertex v : sets[i]) {
                if (v >= n || lv.top[v] != i - 1) {
                    throw std::invalid_argument("levels: A_" + std::to_string(i) + " not nested in A_" +
                                                std::to_string(i - 1));
                }
                lv.top[v] = static_cast<std::uint8_t>(i);
            }
        }
        lv.sets = std::move(sets);
        return lv;
    }
};

namespace detail {

inline double clamp_target(double target, std::size_t universe) {
    return std::clamp(target, 1.0, static_cast<double>(universe));
}

}  // namespace detail

// Classic levels: A_i drawn from A_{i-1} aiming at n^{1-i/k} members.
inline Levels build_levels(std::size_t n, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("build_levels: k must be >= 1");
    if (n == 0) throw std::invalid_argument("build_levels: empty vertex set");
    std::vector<std::vector<Vertex>> sets{all_vertices(n)};
    for (int i = 1; i < k; ++i) {
        const double target = std::pow(static_cast<double>(n), 1.0 - static_cast<double>(i) / k);
        sets.push_back(sample_subset(sets.back(), detail::clamp_target(target, sets.back().size()), rng));
    }
    return Levels::from_sets(n, std::move(sets));
}

// Parameterized levels: A_0 = V, A_1 = S, and A_i (2 <= i <= k) thinned from A_{i-1}
// at rate |S|^{-1/k}, so |A_k| ≈ |S|^{1/k}.
inline Levels build_param_levels(std::size_t n, int k, std::span<const Vertex> set, Rng& rng) {
    if (k < 1) throw std::invalid_argument("parameterized levels: k must be >= 1");
    if (set.empty()) throw std::invalid_argument("parameterized levels: empty S");
    std::vector<Vertex> s(set.begin(), set.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("parameterized levels: duplicate in S");
    const double ssize = static_cast<double>(s.size());
    std::vector<std::vector<Vertex>> sets{all_vertices(n), std::move(s)};
    for (int i = 2; i <= k; ++i) {
        const double target = std::pow(ssize, 1.0 - static_cast<double>(i - 1) / k);
        sets.push_back(sample_subset(sets.back(), detail::clamp_target(target, sets.back().size()), rng));
    }
    return Levels::from_sets(n, std::move(sets));
}

struct Pivot {
    Vertex vertex = kNoVertex;
    Weight dist = kInfinity;

    friend bool operator==(const Pivot&, const Pivot&) = default;
};

// Instrumentation for a single query.
struct QueryTrace {
    int lookups = 0;      // bunch membership probes across both directions
    int exit_level = -1;  // level of the winning probe, -1 if none succeeded
};

class BunchOracle {
public:
    struct Data {
        OracleMode mode = OracleMode::classic;
        int k = 1;
        std::uint64_t seed = 0;
        std::size_t n = 0;
        Levels levels;
        std::vector<Vertex> owners;  // sorted; vertices that carry pivots and bunches
        std::vector<Pivot> pivots;   // owners.size() * levels.count()
        std::vector<std::unordered_map<Vertex, Weight>> bunches;  // per owner
    };

    BunchOracle() = default;

    explicit BunchOracle(Data d) : d_(std::move(d)) {
        if (d_.pivots.size() != d_.owners.size() * d_.levels.count() || d_.bunches.size() != d_.owners.size()) {
            throw std::invalid_argument("bunch oracle: inconsistent table sizes");
        }
        slot_.assign(d_.n, kNoVertex);
        for (std::size_t i = 0; i < d_.owners.size(); ++i) slot_[d_.owners[i]] = static_cast<Vertex>(i);
    }

    const Data& data() const { return d_; }
    OracleMode mode() const { return d_.mode; }
    int k() const { return d_.k; }
    std::uint64_t seed() const { return d_.seed; }
    void set_seed(std::uint64_t seed) { d_.seed = seed; }
    std::size_t num_vertices() const { return d_.n; }
    const Levels& levels() const { return d_.levels; }
    std::size_t num_levels() const { return d_.levels.count(); }
    const std::vector<Vertex>& owners() const { return d_.owners; }
    const SearchStats& build_stats() const { return stats_; }
    void set_build_stats(const SearchStats& s) { stats_ = s; }

    bool has_table(Vertex v) const { return v < d_.n && slot_[v] != kNoVertex; }

    const Pivot& pivot(Vertex v, std::size_t i) const {
        return d_.pivots[slot(v) * d_.levels.count() + i];
    }

    // h_i(v), with h_L(v) = ∞ because A_L is empty.
    Weight h(Vertex v, std::size_t i) const {
        return i >= d_.levels.count() ? kInfinity : pivot(v, i).dist;
    }

    // Stored distance d(v, w) if w is anywhere in v's bunch.
    std::optional<Weight> bunch_distance(Vertex v, Vertex w) const {
        const auto& b = d_.bunches[slot(v)];
        auto it = b.find(w);
        if (it == b.end()) return std::nullopt;
        return it->second;
    }

    // w ∈ B_i(v): w ∈ A_i and d(v, w) < h_{i+1}(v). In the parameterized modes B_0(v) = {v}.
    bool in_bunch(Vertex v, std::size_t i, Vertex w, Weight* dist = nullptr) const {
        if (w == kNoVertex) return false;
        if (i == 0 && d_.mode != OracleMode::classic) {
            if (w != v) return false;
            if (dist) *dist = 0.0;
            return true;
        }
        if (!d_.levels.contains(i, w)) return false;
        auto d = bunch_distance(v, w);
        if (!d || !(*d < h(v, i + 1))) return false;
        if (dist) *dist = *d;
        return true;
    }

    // Explicit B_i(v), sorted by id.
    std::vector<std::pair<Vertex, Weight>> bunch(Vertex v, std::size_t i) const {
        std::vector<std::pair<Vertex, Weight>> out;
        if (i == 0 && d_.mode != OracleMode::classic) {
            out.emplace_back(v, 0.0);
            return out;
        }
        for (const auto& [w, d] : d_.bunches[slot(v)]) {
            if (d_.levels.contains(i, w) && d < h(v, i + 1)) out.emplace_back(w, d);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // One pass of the alternating query: probe p_i(u) ∈ B_i(v), else swap roles and
    // move up a level. Returns ∞ when no probe succeeds (u, v disconnected).
    Weight query_directed(Vertex u, Vertex v, QueryTrace* trace = nullptr) const {
        check_queryable(u);
        check_queryable(v);
        if (u == v) return 0.0;
        for (std::size_t i = 0; i < d_.levels.count(); ++i) {
            const Pivot& p = pivot(u, i);
            if (trace) ++trace->lookups;
            Weight d;
            if (in_bunch(v, i, p.vertex, &d)) {
                if (trace) trace->exit_level = static_cast<int>(i);
                return p.dist + d;
            }
            std::swap(u, v);
        }
        return kInfinity;
    }

    // Estimate = min over both starting orders.
    Weight query(Vertex u, Vertex v, QueryTrace* trace = nullptr) const {
        QueryTrace a, b;
        Weight x = query_directed(u, v, trace ? &a : nullptr);
        Weight y = query_directed(v, u, trace ? &b : nullptr);
        if (trace) {
            trace->lookups += a.lookups + b.lookups;
            trace->exit_level = x <= y ? a.exit_level : b.exit_level;
        }
        return std::min(x, y);
    }

    // Number of stored (owner, bunch member) pairs.
    std::size_t entry_count() const {
        std::size_t total = 0;
        for (const auto& b : d_.bunches) total += b.size();
        return total;
    }

    // Bunch entries plus one pivot record per owner and level.
    std::size_t space_entries() const { return entry_count() + d_.pivots.size(); }

private:
    std::size_t slot(Vertex v) const {
        if (!has_table(v)) throw std::out_of_range("bunch oracle: vertex " + std::to_string(v) + " has no table");
        return slot_[v];
    }

    void check_queryable(Vertex v) const {
        if (v >= d_.n) throw std::out_of_range("bunch oracle: vertex out of range");
        if (!has_table(v)) {
            throw std::out_of_range("bunch oracle: vertex " + std::to_string(v) + " is outside the query domain");
        }
    }

    Data d_;
    std::vector<Vertex> slot_;
    SearchStats stats_;
};

namespace detail {

// Pivots from one multi-source search per level, then bunches by growing the cluster
// C(w) = { x : d(x, w) < h_{i+1}(x) } of every w ∈ A_i \ A_{i+1} with a pruned
// Dijkstra and inverting clusters into bunches. Clusters are closed under shortest-path
// prefixes, so the pruned search yields exact distances.
inline BunchOracle grow_bunches(const Graph& g, Levels levels, OracleMode mode, int k,
                                std::span<const Vertex> owners_in) {
    const std::size_t n = g.num_vertices();
    const std::size_t L = levels.count();
    SearchStats stats;

    std::vector<Vertex> owners(owners_in.begin(), owners_in.end());
    std::sort(owners.begin(), owners.end());
    std::vector<Vertex> slot(n, kNoVertex);
    for (std::size_t i = 0; i < owners.size(); ++i) slot[owners[i]] = static_cast<Vertex>(i);

    // h_i for every vertex (needed to prune clusters), pivots kept for owners only.
    std::vector<std::vector<Weight>> h(L + 1);
    std::vector<Pivot> pivots(owners.size() * L);
    for (std::size_t i = 0; i < L; ++i) {
        if (i == 0) {
            h[0].assign(n, 0.0);
            for (std::size_t o = 0; o < owners.size(); ++o) pivots[o * L] = Pivot{owners[o], 0.0};
            continue;
        }
        auto info = nearest_in_set(g, levels.sets[i], &stats);
        for (std::size_t o = 0; o < owners.size(); ++o) {
            pivots[o * L + i] = Pivot{info.p[owners[o]], info.h[owners[o]]};
        }
        h[i] = std::move(info.h);
    }
    h[L].assign(n, kInfinity);

    std::vector<std::unordered_map<Vertex, Weight>> bunches(owners.size());
    std::vector<Weight> dist(n, kInfinity);
    std::vector<char> done(n, 0);
    std::vector<Vertex> touched;
    const std::size_t first_level = mode == OracleMode::classic ? 0 : 1;
    for (std::size_t i = first_level; i < L; ++i) {
        const auto& limit = h[i + 1];
        for (Vertex w : levels.sets[i]) {
            if (levels.top[w] != i) continue;
            if (!(0.0 < limit[w])) continue;
            MinHeap heap;
            dist[w] = 0.0;
            touched.push_back(w);
            heap.push({0.0, w});
            while (!heap.empty()) {
                auto [d, x] = heap.top();
                heap.pop();
                if (done[x]) continue;
                done[x] = 1;
                ++stats.settled;
                if (slot[x] != kNoVertex) bunches[slot[x]].emplace(w, d);
                for (const auto& a : g.neighbors(x)) {
                    ++stats.relaxations;
                    const Weight nd = d + a.w;
                    if (nd < limit[a.to] && nd < dist[a.to]) {
                        if (dist[a.to] == kInfinity) touched.push_back(a.to);
                        dist[a.to] = nd;
                        heap.push({nd, a.to});
                    }
                }
            }
            for (Vertex x : touched) {
                dist[x] = kInfinity;
                done[x] = 0;
            }
            touched.clear();
        }
    }

    BunchOracle::Data data;
    data.mode = mode;
    data.k = k;
    data.n = n;
    data.levels = std::move(levels);
    data.owners = std::move(owners);
    data.pivots = std::move(pivots);
    data.bunches = std::move(bunches);
    BunchOracle oracle(std::move(data));
    oracle.set_build_stats(stats);
    return oracle;
}

}  // namespace detail

// Classic (2k-1)-stretch oracle over fixed levels.
inline BunchOracle build_bunches(const Graph& g, Levels levels) {
    if (levels.top.size() != g.num_vertices()) throw std::invalid_argument("build_bunches: levels over a different vertex set");
    const int k = static_cast<int>(levels.count());
    auto owners = all_vertices(g.num_vertices());
    return detail::grow_bunches(g, std::move(levels), OracleMode::classic, k, owners);
}

inline BunchOracle build_tz(const Graph& g, int k, Rng& rng) {
    return build_bunches(g, build_levels(g.num_vertices(), k, rng));
}

}  // namespace ado

#endif  // ADO_BUNCH_ORACLE_HPP
