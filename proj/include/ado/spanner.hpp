// spanner.hpp - Baswana-Sen clustering spanners and pivot-edge augmentation.

#ifndef ADO_SPANNER_HPP
#define ADO_SPANNER_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ado/graph.hpp"
#include "ado/sampling.hpp"
#include "ado/shortest_paths.hpp"

namespace ado {

inline constexpr double kSpannerSizeFactor = 10.0;
inline constexpr int kSpannerRetries = 8;

struct SpannerResult {
    Graph h;
    int k_spanner = 1;
    int additive = 0;            // 0: (2k-1)-multiplicative, k-1: (k, k-1) mixed
    double edge_budget = 0.0;    // n^{1+1/k}
    int attempts = 1;
    bool over_budget = false;    // kept after exhausting retries
    std::size_t augmented = 0;   // pivot edges added by augment_with_pivots

    // Upper bound the spanner promises for d_H given d_G.
    double stretch_bound(double d) const {
        return additive == 0 ? (2.0 * k_spanner - 1.0) * d : k_spanner * d + additive;
    }
};

namespace detail {

struct SpannerArc {
    Vertex to;
    std::uint32_t id;  // index into the canonical edge list
};

// One Baswana-Sen run. Edges are totally ordered by (weight, canonical index), which
// breaks ties toward the smaller endpoint ids.
inline std::vector<Edge> baswana_sen_once(const Graph& g, int k, Rng& rng) {
    const std::size_t n = g.num_vertices();
    const auto& edges = g.edges();
    auto lighter = [&](std::uint32_t a, std::uint32_t b) {
        return edges[a].w != edges[b].w ? edges[a].w < edges[b].w : a < b;
    };

    std::vector<std::vector<SpannerArc>> adj(n);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        adj[edges[i].u].push_back({edges[i].v, i});
        adj[edges[i].v].push_back({edges[i].u, i});
    }
    std::vector<char> alive(edges.size(), 1);
    std::vector<char> chosen(edges.size(), 0);
    std::vector<Vertex> cluster(n);
    for (std::size_t v = 0; v < n; ++v) cluster[v] = static_cast<Vertex>(v);

    // Lightest alive edge from v into each adjacent cluster, in cluster-id order.
    std::vector<std::uint32_t> best_to(n, UINT32_MAX);
    std::vector<Vertex> seen;
    auto lightest_per_cluster = [&](Vertex v, const std::vector<Vertex>& cl) {
        seen.clear();
        for (const auto& a : adj[v]) {
            if (!alive[a.id]) continue;
            const Vertex c = cl[a.to];
            if (c == kNoVertex) continue;
            if (best_to[c] == UINT32_MAX) {
                seen.push_back(c);
                best_to[c] = a.id;
            } else if (lighter(a.id, best_to[c])) {
                best_to[c] = a.id;
            }
        }
        std::sort(seen.begin(), seen.end());
        std::vector<std::pair<Vertex, std::uint32_t>> out;
        out.reserve(seen.size());
        for (Vertex c : seen) {
            out.emplace_back(c, best_to[c]);
            best_to[c] = UINT32_MAX;
        }
        return out;
    };

    const double p = std::pow(static_cast<double>(n), -1.0 / k);
    for (int phase = 1; phase < k; ++phase) {
        std::vector<char> sampled(n, 0);
        for (std::size_t c = 0; c < n; ++c) {
            if (uniform01(rng) < p) sampled[c] = 1;
        }
        std::vector<Vertex> next(n, kNoVertex);
        std::vector<std::uint32_t> kill;
        for (Vertex v = 0; v < n; ++v) {
            const Vertex c = cluster[v];
            if (c == kNoVertex) continue;
            if (sampled[c]) {
                next[v] = c;
                continue;
            }
            auto per = lightest_per_cluster(v, cluster);
            std::uint32_t join = UINT32_MAX;
            Vertex join_cluster = kNoVertex;
            for (const auto& [c2, id] : per) {
                if (sampled[c2] && (join == UINT32_MAX || lighter(id, join))) {
                    join = id;
                    join_cluster = c2;
                }
            }
            if (join == UINT32_MAX) {
                for (const auto& [c2, id] : per) chosen[id] = 1;
                for (const auto& a : adj[v]) {
                    if (alive[a.id]) kill.push_back(a.id);
                }
                continue;
            }
            chosen[join] = 1;
            next[v] = join_cluster;
            std::vector<Vertex> dropped{join_cluster};
            for (const auto& [c2, id] : per) {
                if (c2 != join_cluster && lighter(id, join)) {
                    chosen[id] = 1;
                    dropped.push_back(c2);
                }
            }
            std::sort(dropped.begin(), dropped.end());
            for (const auto& a : adj[v]) {
                if (!alive[a.id]) continue;
                const Vertex c2 = cluster[a.to];
                if (c2 != kNoVertex && std::binary_search(dropped.begin(), dropped.end(), c2)) kill.push_back(a.id);
            }
        }
        for (auto id : kill) alive[id] = 0;
        cluster = std::move(next);
        for (std::uint32_t i = 0; i < edges.size(); ++i) {
            if (!alive[i]) continue;
            const Vertex cu = cluster[edges[i].u], cv = cluster[edges[i].v];
            if (cu == kNoVertex || cv == kNoVertex || cu == cv) alive[i] = 0;
        }
    }

    for (Vertex v = 0; v < n; ++v) {
        for (const auto& [c, id] : lightest_per_cluster(v, cluster)) chosen[id] = 1;
    }

    std::vector<Edge> out;
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
        if (chosen[i]) out.push_back(edges[i]);
    }
    return out;
}

inline SpannerResult spanner_with_retries(const Graph& g, int k, int additive, Rng& rng) {
    SpannerResult res;
    res.k_spanner = k;
    res.additive = additive;
    res.edge_budget = std::pow(static_cast<double>(g.num_vertices()), 1.0 + 1.0 / k);
    const double cap = kSpannerSizeFactor * res.edge_budget;
    std::vector<Edge> best;
    bool have = false;
    for (int attempt = 1; attempt <= kSpannerRetries + 1; ++attempt) {
        auto edges = baswana_sen_once(g, k, rng);
        res.attempts = attempt;
        if (!have || edges.size() < best.size()) {
            best = std::move(edges);
            have = true;
        }
        if (static_cast<double>(best.size()) <= cap) break;
    }
    res.over_budget = static_cast<double>(best.size()) > cap;
    res.h = Graph(g.num_vertices(), std::move(best));
    return res;
}

}  // namespace detail

// (2k-1)-spanner with O(k n^{1+1/k}) expected edges: k-1 clustering rounds sampling
// clusters at rate n^{-1/k}, then every vertex keeps its lightest edge into each
// neighbouring cluster.
inline SpannerResult baswana_sen_spanner(const Graph& g, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("spanner: k must be >= 1");
    return detail::spanner_with_retries(g, k, 0, rng);
}

// (k, k-1)-spanner for unweighted graphs: the same clustering run on unit weights,
// d_H <= k d + k - 1.
inline SpannerResult bkmp_spanner_unweighted(const Graph& g, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("spanner: k must be >= 1");
    if (!g.is_unweighted()) throw std::invalid_argument("(k, k-1)-spanner needs an unweighted graph");
    return detail::spanner_with_retries(g, k, k - 1, rng);
}

// Adds (u, p(u)) with weight h(u) for every u that reaches S; an existing lighter edge wins.
inline SpannerResult augment_with_pivots(const SpannerResult& sp, const NearestInfo& nearest) {
    const std::size_t n = sp.h.num_vertices();
    if (nearest.size() != n) throw std::invalid_argument("augment_with_pivots: vertex set mismatch");
    std::vector<Edge> edges = sp.h.edges();
    std::size_t added = 0;
    for (Vertex u = 0; u < n; ++u) {
        const Vertex p = nearest.p[u];
        if (p == kNoVertex || p == u) continue;
        edges.push_back({u, p, nearest.h[u]});
        ++added;
    }
    SpannerResult out = sp;
    out.h = Graph(n, std::move(edges));
    out.augmented = sp.augmented + added;
    return out;
}

inline void write_spanner(std::ostream& os, const SpannerResult& sp) {
    std::vector<std::string> header{"spanner k=" + std::to_string(sp.k_spanner) + " additive=" + std::to_string(sp.additive)};
    write_graph(os, sp.h, header);
}

}  // namespace ado

#endif  // ADO_SPANNER_HPP
