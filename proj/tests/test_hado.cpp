#include <gtest/gtest.h>

#include <cmath>

#include "ado/ado.hpp"
#include "test_support.hpp"

using namespace ado;
using namespace testing_support;

TEST(XSequence, RecurrenceStep) {
    auto xs = x_sequence(4, 0.55, 3);
    ASSERT_EQ(xs.size(), 4u);
    EXPECT_NEAR(xs[1], 0.65, 1e-15);
    EXPECT_NEAR(0.55 - 1.0 / 12 + 0.55 / 3, 0.65, 1e-15);
}

TEST(XSequence, ClosedFormStep) {
    EXPECT_NEAR(x_closed_form(4, 0.55, 1), 0.7 - 0.15 / 3, 1e-15);
    EXPECT_NEAR(x_closed_form(4, 0.55, 1), 0.65, 1e-15);
    EXPECT_NEAR(x_closed_form(4, 0.55, 0), 0.55, 1e-15);
}

TEST(XSequence, FixedPointAtOneOverK) {
    for (int k = 3; k <= 64; ++k) {
        auto xs = x_sequence(k, 1.0 / k, 10);
        for (double x : xs) EXPECT_EQ(x, 1.0 / k);
    }
}

TEST(XSequence, MonotoneAndConverging) {
    for (int k = 3; k <= 20; ++k) {
        for (double x0 : {1.0 / k, 0.3, 0.5, 0.9}) {
            if (x0 < 1.0 / k) continue;
            auto xs = x_sequence(k, x0, 10);
            for (std::size_t j = 1; j < xs.size(); ++j) EXPECT_GE(xs[j], xs[j - 1] - 1e-15);
            EXPECT_NEAR(xs.back(), x_limit(k, x0), std::pow(1.0 / (k - 1), 10));
        }
    }
}

TEST(XSequence, DomainErrors) {
    EXPECT_THROW(x_sequence(2, 0.6, 3), std::invalid_argument);
    EXPECT_THROW(x_sequence(4, 0.2, 3), std::invalid_argument);
    EXPECT_THROW(x_sequence(4, 1.0, 3), std::invalid_argument);
    EXPECT_THROW(x_sequence(4, 0.5, -1), std::invalid_argument);
}

TEST(LadderDepth, SmallAndLargeN) {
    EXPECT_EQ(ladder_depth(2), 1);
    EXPECT_EQ(ladder_depth(16), 2);
    EXPECT_EQ(ladder_depth(17), 3);
    EXPECT_EQ(ladder_depth(1000), 4);
    EXPECT_EQ(ladder_depth(65536), 4);
    EXPECT_EQ(ladder_depth(65537), 5);
}

TEST(BuildHado, DomainErrors) {
    auto g = random_graph(50, 150, 1);
    Rng rng(1);
    EXPECT_THROW(build_hado(g, 2, 0.6, rng), std::invalid_argument);
    EXPECT_THROW(build_hado(g, 4, 0.1, rng), std::invalid_argument);
}

TEST(BuildHado, TinyGraphClampsTargets) {
    auto g = random_graph(16, 40, 2);
    Rng rng(2);
    auto h = build_hado(g, 3, 0.9, rng);
    EXPECT_FALSE(h.report.warnings.empty());
    for (const auto& s : h.s_sets) EXPECT_LE(s.size(), 2u);
    auto d = exact_apsp(g);
    for (Vertex u = 0; u < 16; ++u) {
        for (Vertex v = 0; v < 16; ++v) EXPECT_TRUE(within(d.at(u, v), h.query(u, v)));
    }
}

TEST(BuildHado, LadderSizes) {
    auto g = random_graph(1000, 8000, 3);
    Rng rng(3);
    auto h = build_hado(g, 4, 0.55, rng);
    EXPECT_EQ(h.params.t, 4);
    ASSERT_EQ(h.s_sets.size(), 5u);
    EXPECT_GE(h.s_sets[0].size(), 11u);
    EXPECT_LE(h.s_sets[0].size(), 45u);
    EXPECT_GE(h.s_sets[1].size(), 5u);
    EXPECT_LE(h.s_sets[1].size(), 23u);
    for (std::size_t i = 1; i < h.s_sets.size(); ++i) {
        EXPECT_TRUE(std::includes(h.s_sets[i - 1].begin(), h.s_sets[i - 1].end(), h.s_sets[i].begin(), h.s_sets[i].end()));
        const double target = std::max(1.0, std::pow(1000.0, 1.0 - h.params.xs[i]));
        EXPECT_LE(static_cast<double>(h.s_sets[i].size()), 2.0 * target + 1.0);
    }
    EXPECT_LE(static_cast<double>(h.report.restricted_edges[0]), 10.0 * std::pow(1000.0, 1.55));
    EXPECT_EQ(h.levels.size(), 4u);
    for (std::size_t i = 0; i < h.levels.size(); ++i) {
        EXPECT_EQ(h.levels[i].k(), 3);
        EXPECT_TRUE(std::equal(h.levels[i].set().begin(), h.levels[i].set().end(), h.s_sets[i].begin(), h.s_sets[i].end()));
    }
}

TEST(HadoQuery, SoundAndConditionallyBounded) {
    for (int k : {3, 4}) {
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            auto g = random_graph(300, 1500, 100 * k + seed);
            Rng rng(seed);
            const double x0 = solve_x0_subquadratic(300, 1500, k);
            auto h = build_hado(g, k, x0, rng);
            const Graph gt = restricted_graph(g, h.nearest_t);
            auto d = exact_apsp(g, kDefaultApspCap, 0);
            auto dt = exact_apsp(gt, kDefaultApspCap, 0);
            std::size_t local = 0;
            for (Vertex u = 0; u < 300; ++u) {
                EXPECT_EQ(h.query(u, u), 0.0);
                for (Vertex v = u + 1; v < 300; ++v) {
                    const Weight est = h.query(u, v);
                    EXPECT_TRUE(within(d.at(u, v), est));
                    if (dt.at(u, v) <= d.at(u, v)) {
                        ++local;
                        EXPECT_TRUE(within(est, (2.0 * k - 1.0) * d.at(u, v))) << "u=" << u << " v=" << v;
                    }
                }
            }
            EXPECT_GT(local, 0u);
        }
    }
}

TEST(HadoQuery, BaseAloneCoversPathsInFirstRestrictedGraph) {
    auto g = random_graph(250, 1000, 7);
    Rng rng(7);
    auto h = build_hado(g, 3, 0.5, rng);
    const Graph g0 = restricted_graph(g, nearest_in_set(g, h.s_sets[0]));
    auto d = exact_apsp(g);
    auto d0 = exact_apsp(g0);
    std::size_t checked = 0;
    for (Vertex u = 0; u < 250; ++u) {
        for (Vertex v = u + 1; v < 250; ++v) {
            if (d0.at(u, v) > d.at(u, v)) continue;
            ++checked;
            EXPECT_TRUE(within(h.base.query(u, v), 5.0 * d.at(u, v)));
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(HadoQuery, LevelCascade) {
    for (int k : {3, 4}) {
        auto g = random_graph(250, 1200, 40 + k);
        Rng rng(k);
        auto h = build_hado(g, k, 0.5, rng);
        auto d = exact_apsp(g);
        std::vector<NearestInfo> ns;
        for (const auto& s : h.s_sets) ns.push_back(nearest_in_set(g, s));
        for (Vertex u = 0; u < 250; ++u) {
            for (Vertex v = u + 1; v < 250; ++v) {
                const Weight duv = d.at(u, v);
                Weight best = h.base.query(u, v);
                for (int i = 1; i <= h.params.t; ++i) {
                    best = std::min(best, h.levels[static_cast<std::size_t>(i - 1)].query(u, v));
                    const auto& n = ns[static_cast<std::size_t>(i)];
                    EXPECT_TRUE(within(std::max(n.h[u], n.h[v]), duv) || within(best, (2.0 * k - 1.0) * duv))
                        << "k=" << k << " u=" << u << " v=" << v << " i=" << i;
                }
            }
        }
    }
}

TEST(HadoProperty, TerminalSetSizeAndLimit) {
    for (std::size_t n : {500u, 2000u}) {
        for (int k : {3, 4, 6}) {
            auto g = random_graph(n, 4 * n, n + static_cast<std::size_t>(k));
            for (double x0 : {1.0 / k, 0.4, 0.55}) {
                Rng rng(static_cast<std::uint64_t>(k));
                auto h = build_hado(g, k, x0, rng);
                const double nd = static_cast<double>(n);
                const double lim = x_limit(k, x0);
                EXPECT_LE(std::abs(h.params.xs.back() - lim), 1.0 / std::log2(nd));
                const double bound = std::max(2.0, 4.0 * std::pow(nd, 1.0 - lim));
                EXPECT_LE(static_cast<double>(h.terminal_set().size()), bound) << "n=" << n << " k=" << k << " x0=" << x0;
            }
        }
    }
}

TEST(HadoProperty, SpaceBound) {
    for (int k : {3, 4}) {
        auto g = random_graph(2000, 16000, 70 + k);
        Rng rng(k);
        auto h = build_hado(g, k, 0.5, rng);
        const double bound = 8.0 * k * std::pow(2000.0, 1.0 + 1.0 / k) * (h.params.t + 1);
        EXPECT_LE(static_cast<double>(h.space_entries()), bound);
        EXPECT_EQ(measure_space(h).total(), h.space_entries());
    }
}

TEST(HadoProperty, DeterministicGivenSeed) {
    auto g = random_graph(300, 1500, 9);
    Rng a(9), b(9);
    EXPECT_EQ(to_bytes(build_hado(g, 3, 0.5, a)), to_bytes(build_hado(g, 3, 0.5, b)));
}
