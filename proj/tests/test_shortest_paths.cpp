#include <gtest/gtest.h>

#include "ado/ado.hpp"
#include "test_support.hpp"

using namespace ado;
using namespace testing_support;

TEST(Dijkstra, PathDistances) {
    auto d = dijkstra(path_graph(3), 0);
    EXPECT_EQ(d.dist, (std::vector<Weight>{0, 1, 2}));
    EXPECT_EQ(d.parent[0], kNoVertex);
    EXPECT_EQ(d.parent[2], 1u);
}

TEST(Dijkstra, DisconnectedVertexIsInfinite) {
    Graph g(3, {{0, 1, 2.0}});
    auto d = dijkstra(g, 0);
    EXPECT_EQ(d.dist[2], kInfinity);
    EXPECT_EQ(d.parent[2], kNoVertex);
    EXPECT_FALSE(d.reachable(2));
}

TEST(Dijkstra, RejectsBadSource) { EXPECT_THROW(dijkstra(path_graph(3), 3), std::out_of_range); }

TEST(Dijkstra, MatchesBellmanFord) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto g = random_graph(50, 200, seed);
        for (Vertex s : {0u, 17u, 49u}) EXPECT_EQ(dijkstra(g, s).dist, bellman_ford(g, s)) << "seed " << seed;
    }
}

TEST(Dijkstra, DistanceMapInvariants) {
    auto g = random_graph(120, 600, 9);
    auto d = dijkstra(g, 5);
    EXPECT_EQ(d.dist[5], 0.0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (v != 5 && d.reachable(v)) {
            EXPECT_EQ(d.dist[v], d.dist[d.parent[v]] + g.edge_weight(d.parent[v], v));
        }
    }
    for (const auto& e : g.edges()) EXPECT_LE(std::abs(d.dist[e.u] - d.dist[e.v]), e.w);
}

TEST(Dijkstra, EdgeFilterRestrictsTheGraph) {
    auto g = path_graph(4);
    auto d = dijkstra(g, 0, [](Vertex u, Vertex v, Weight) { return !((u == 1 && v == 2) || (u == 2 && v == 1)); });
    EXPECT_EQ(d.dist[1], 1.0);
    EXPECT_EQ(d.dist[2], kInfinity);
}

TEST(Bfs, MatchesDijkstraOnUnitWeights) {
    auto g = unit_graph(200, 700, 3);
    for (Vertex s : {0u, 99u}) EXPECT_EQ(bfs(g, s).dist, dijkstra(g, s).dist);
}

TEST(NearestInSet, PathToLastVertex) {
    std::vector<Vertex> s{2};
    auto info = nearest_in_set(path_graph(3), s);
    EXPECT_EQ(info.h, (std::vector<Weight>{2, 1, 0}));
    EXPECT_EQ(info.p, (std::vector<Vertex>{2, 2, 2}));
    EXPECT_TRUE(info.contains(2));
    EXPECT_FALSE(info.contains(0));
}

TEST(NearestInSet, WholeVertexSetIsIdentity) {
    auto g = random_graph(40, 100, 2);
    auto all = all_vertices(40);
    auto info = nearest_in_set(g, all);
    for (Vertex v = 0; v < 40; ++v) {
        EXPECT_EQ(info.h[v], 0.0);
        EXPECT_EQ(info.p[v], v);
    }
}

TEST(NearestInSet, MatchesPerSourceDijkstra) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        // Small integer weights make ties common, which exercises the id tie-break.
        auto g = random_graph(100, 300, seed, 3.0);
        auto s = random_set(100, 10, seed);
        auto info = nearest_in_set(g, s);
        std::vector<std::vector<Weight>> from(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) from[i] = dijkstra(g, s[i]).dist;
        for (Vertex v = 0; v < 100; ++v) {
            Weight best = kInfinity;
            Vertex arg = kNoVertex;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (from[i][v] < best) best = from[i][v], arg = s[i];
            }
            EXPECT_EQ(info.h[v], best);
            EXPECT_EQ(info.p[v], arg) << "vertex " << v << " seed " << seed;
        }
    }
}

TEST(NearestInSet, UnreachableVerticesHaveNoPivot) {
    auto g = two_components(20, 40, 1);
    std::vector<Vertex> s{3};
    auto info = nearest_in_set(g, s);
    EXPECT_EQ(info.h[25], kInfinity);
    EXPECT_EQ(info.p[25], kNoVertex);
}

TEST(NearestInSet, EmptySetThrows) { EXPECT_THROW(nearest_in_set(path_graph(3), {}), std::invalid_argument); }

TEST(RestrictedGraph, PathWithFirstVertexKeepsBothEdges) {
    auto g = path_graph(3);
    std::vector<Vertex> s{0};
    auto info = nearest_in_set(g, s);
    EXPECT_EQ(info.h, (std::vector<Weight>{0, 1, 2}));
    EXPECT_EQ(restricted_graph(g, info).num_edges(), 2u);
}

TEST(RestrictedGraph, WholeSetLeavesNoEdges) {
    auto g = random_graph(50, 150, 3);
    auto all = all_vertices(50);
    auto gs = restricted_graph(g, nearest_in_set(g, all));
    EXPECT_EQ(gs.num_vertices(), 50u);
    EXPECT_EQ(gs.num_edges(), 0u);
}

TEST(RestrictedGraph, KeepsEdgeIffLightEnoughAtAnEndpoint) {
    auto g = random_graph(80, 400, 5);
    auto s = random_set(80, 8, 5);
    auto info = nearest_in_set(g, s);
    auto gs = restricted_graph(g, info);
    for (const auto& e : g.edges()) {
        const bool keep = e.w <= std::max(info.h[e.u], info.h[e.v]);
        EXPECT_EQ(gs.edge_weight(e.u, e.v) == e.w, keep);
    }
}

TEST(RestrictedGraph, PreservesDistancesInsideBalls) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto g = random_graph(200, 800, seed);
        auto s = random_set(200, 12, seed + 7);
        auto info = nearest_in_set(g, s);
        auto gs = restricted_graph(g, info);
        for (Vertex u = 0; u < 200; ++u) {
            auto dg = dijkstra(g, u).dist;
            auto ds = dijkstra(gs, u).dist;
            for (const auto& [v, d] : ball(g, u, info).members) {
                EXPECT_EQ(d, dg[v]);
                EXPECT_EQ(ds[v], dg[v]) << "u=" << u << " v=" << v;
            }
        }
    }
}

TEST(RestrictedGraph, ExpectedSizeIsLinearInNOverP) {
    // Weights in [1, 1e6] keep ties (which inflate the non-strict rule) negligible.
    for (double p : {0.2, 0.5}) {
        double total = 0.0;
        const int seeds = 20;
        for (int seed = 1; seed <= seeds; ++seed) {
            auto g = random_graph(2000, 20000, 100 + seed, 1e6);
            Rng rng(static_cast<std::uint64_t>(seed));
            auto all = all_vertices(2000);
            auto s = sample_subset(all, p * 2000, rng);
            total += static_cast<double>(restricted_graph(g, nearest_in_set(g, s)).num_edges());
        }
        EXPECT_LE(total / seeds, 4.0 * 2000 / p) << "p=" << p;
    }
}

TEST(FarPathLemma, WeightedMaxPivotDistanceBoundedByDistance) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto g = random_graph(100, 400, seed);
        auto s = random_set(100, 10, seed * 3);
        auto res = check_far_path_lemma(g, nearest_in_set(g, s), false);
        EXPECT_GT(res.leaving, 0u);
        EXPECT_EQ(res.violations, 0u);
    }
}

TEST(FarPathLemma, UnweightedSumOfPivotDistances) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto g = unit_graph(100, 300, seed);
        auto s = random_set(100, 15, seed * 5);
        auto res = check_far_path_lemma(g, nearest_in_set(g, s), true);
        EXPECT_GT(res.leaving, 0u);
        EXPECT_EQ(res.violations, 0u);
    }
}

TEST(Ball, CenterInSetIsEmpty) {
    auto g = path_graph(4);
    std::vector<Vertex> s{3};
    EXPECT_TRUE(ball(g, 3, nearest_in_set(g, s)).members.empty());
}

TEST(Ball, PathBallIsStrict) {
    auto g = path_graph(4);
    std::vector<Vertex> s{3};
    auto b = ball(g, 0, nearest_in_set(g, s));
    using M = std::vector<std::pair<Vertex, Weight>>;
    EXPECT_EQ(b.members, (M{{0, 0.0}, {1, 1.0}, {2, 2.0}}));
}

TEST(Ball, MatchesFilteredDijkstra) {
    auto g = random_graph(150, 600, 8, 5.0);
    auto s = random_set(150, 6, 8);
    auto info = nearest_in_set(g, s);
    for (Vertex u = 0; u < 150; ++u) {
        auto d = dijkstra(g, u).dist;
        std::vector<std::pair<Vertex, Weight>> expect;
        for (Vertex v = 0; v < 150; ++v) {
            if (d[v] < info.h[u]) expect.emplace_back(v, d[v]);
        }
        EXPECT_EQ(ball(g, u, info).members, expect);
    }
}
