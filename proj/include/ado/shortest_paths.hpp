// shortest_paths.hpp - Dijkstra variants, nearest-in-set, balls and the restricted graph G_S.

#ifndef ADO_SHORTEST_PATHS_HPP
#define ADO_SHORTEST_PATHS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ado/graph.hpp"

namespace ado {

// Counts edge relaxations; builders thread one through to expose construction cost.
struct SearchStats {
    std::uint64_t relaxations = 0;
    std::uint64_t settled = 0;

    SearchStats& operator+=(const SearchStats& o) {
        relaxations += o.relaxations;
        settled += o.settled;
        return *this;
    }
};

struct DistanceMap {
    Vertex source = kNoVertex;
    std::vector<Weight> dist;
    std::vector<Vertex> parent;  // kNoVertex for the source and unreachable vertices

    bool reachable(Vertex v) const { return dist[v] != kInfinity; }
};

struct AcceptAllEdges {
    constexpr bool operator()(Vertex, Vertex, Weight) const noexcept { return true; }
};

namespace detail {

struct HeapItem {
    Weight dist;
    Vertex vertex;
    friend bool operator>(const HeapItem& a, const HeapItem& b) {
        return a.dist != b.dist ? a.dist > b.dist : a.vertex > b.vertex;
    }
};

using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

}  // namespace detail

// Exact single-source distances. `keep(u, v, w)` restricts the edge set without
// materializing a subgraph. Unreachable vertices get kInfinity.
template <typename EdgeFilter = AcceptAllEdges>
DistanceMap dijkstra(const Graph& g, Vertex source, EdgeFilter keep = {}, SearchStats* stats = nullptr) {
    const auto n = g.num_vertices();
    if (source >= n) throw std::out_of_range("dijkstra: source out of range");
    DistanceMap out{source, std::vector<Weight>(n, kInfinity), std::vector<Vertex>(n, kNoVertex)};
    std::vector<char> done(n, 0);
    detail::MinHeap heap;
    out.dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (done[x]) continue;
        done[x] = 1;
        if (stats) ++stats->settled;
        for (const auto& a : g.neighbors(x)) {
            if (!keep(x, a.to, a.w)) continue;
            if (stats) ++stats->relaxations;
            Weight nd = d + a.w;
            if (nd < out.dist[a.to]) {
                out.dist[a.to] = nd;
                out.parent[a.to] = x;
                heap.push({nd, a.to});
            }
        }
    }
    return out;
}

// Breadth-first distances for unit-weight graphs; same contract as dijkstra().
inline DistanceMap bfs(const Graph& g, Vertex source) {
    const auto n = g.num_vertices();
    if (source >= n) throw std::out_of_range("bfs: source out of range");
    DistanceMap out{source, std::vector<Weight>(n, kInfinity), std::vector<Vertex>(n, kNoVertex)};
    std::vector<Vertex> queue;
    queue.reserve(n);
    queue.push_back(source);
    out.dist[source] = 0.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        for (const auto& a : g.neighbors(x)) {
            if (out.dist[a.to] == kInfinity) {
                out.dist[a.to] = out.dist[x] + 1.0;
                out.parent[a.to] = x;
                queue.push_back(a.to);
            }
        }
    }
    return out;
}

// Per-vertex distance h_S(u) = d(u, S) and nearest member p_S(u), ties toward the
// smaller member id. Vertices that cannot reach S get (kInfinity, kNoVertex).
struct NearestInfo {
    std::vector<char> in_set;
    std::vector<Weight> h;
    std::vector<Vertex> p;

    std::size_t size() const { return h.size(); }
    bool contains(Vertex v) const { return in_set[v] != 0; }
};

// One multi-source Dijkstra, equivalent to a search from a virtual source joined to
// every member of S by zero-weight edges. Keys are (distance, member id) so the
// nearest member is chosen lexicographically.
inline NearestInfo nearest_in_set(const Graph& g, std::span<const Vertex> set, SearchStats* stats = nullptr) {
    const auto n = g.num_vertices();
    if (set.empty()) throw std::invalid_argument("nearest_in_set: empty set");
    NearestInfo info{std::vector<char>(n, 0), std::vector<Weight>(n, kInfinity), std::vector<Vertex>(n, kNoVertex)};

    struct Item {
        Weight dist;
        Vertex member;
        Vertex vertex;
        bool operator>(const Item& o) const {
            if (dist != o.dist) return dist > o.dist;
            if (member != o.member) return member > o.member;
            return vertex > o.vertex;
        }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (Vertex s : set) {
        if (s >= n) throw std::out_of_range("nearest_in_set: member out of range");
        info.in_set[s] = 1;
        info.h[s] = 0.0;
        info.p[s] = s;
        heap.push({0.0, s, s});
    }
    std::vector<char> done(n, 0);
    while (!heap.empty()) {
        auto [d, s, x] = heap.top();
        heap.pop();
        if (done[x]) continue;
        done[x] = 1;
        if (stats) ++stats->settled;
        for (const auto& a : g.neighbors(x)) {
            if (stats) ++stats->relaxations;
            Weight nd = d + a.w;
            if (nd < info.h[a.to] || (nd == info.h[a.to] && s < info.p[a.to] && !done[a.to])) {
                info.h[a.to] = nd;
                info.p[a.to] = s;
                heap.push({nd, s, a.to});
            }
        }
    }
    return info;
}

// G_S: keeps (u, v, w) iff w <= max(h_S(u), h_S(v)), i.e. the union over v of the
// edges incident to v that are no heavier than h_S(v). Vertex set unchanged.
inline Graph restricted_graph(const Graph& g, const NearestInfo& info) {
    if (info.size() != g.num_vertices()) throw std::invalid_argument("restricted_graph: size mismatch");
    std::vector<Edge> kept;
    for (const auto& e : g.edges()) {
        if (e.w <= std::max(info.h[e.u], info.h[e.v])) kept.push_back(e);
    }
    return Graph(g.num_vertices(), std::move(kept));
}

struct Ball {
    Vertex center = kNoVertex;
    std::vector<std::pair<Vertex, Weight>> members;  // sorted by vertex id
};

// B_S(u) = { v : d(u, v) < h_S(u) }, by a Dijkstra truncated at the radius.
inline Ball ball(const Graph& g, Vertex u, const NearestInfo& info) {
    const auto n = g.num_vertices();
    if (u >= n) throw std::out_of_range("ball: center out of range");
    Ball out{u, {}};
    const Weight radius = info.h[u];
    if (!(radius > 0.0)) return out;
    std::vector<Weight> dist(n, kInfinity);
    std::vector<char> done(n, 0);
    detail::MinHeap heap;
    dist[u] = 0.0;
    heap.push({0.0, u});
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (done[x]) continue;
        if (d >= radius) break;
        done[x] = 1;
        out.members.emplace_back(x, d);
        for (const auto& a : g.neighbors(x)) {
            Weight nd = d + a.w;
            if (nd < radius && nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, a.to});
            }
        }
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

}  // namespace ado

#endif  // ADO_SHORTEST_PATHS_HPP
