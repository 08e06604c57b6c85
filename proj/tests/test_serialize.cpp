#include <gtest/gtest.h>

#include <sstream>

#include "ado/ado.hpp"
#include "test_support.hpp"

using namespace ado;
using namespace testing_support;

namespace {

template <typename O>
void expect_same_answers(const O& a, const AnyOracle& b, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    for (int i = 0; i < 2000; ++i) {
        const auto u = static_cast<Vertex>(uniform_below(rng, n));
        const auto v = static_cast<Vertex>(uniform_below(rng, n));
        const Weight x = a.query(u, v);
        const Weight y = query_any(b, u, v);
        EXPECT_EQ(std::bit_cast<std::uint64_t>(x), std::bit_cast<std::uint64_t>(y));
    }
}

}  // namespace

TEST(Serialize, ClassicRoundTrip) {
    auto g = random_graph(200, 800, 1);
    Rng rng(1);
    auto o = build_tz(g, 3, rng);
    o.set_seed(1);
    const auto bytes = to_bytes(o);
    EXPECT_EQ(bytes.substr(0, 4), "ADOx");
    auto back = from_bytes<BunchOracle>(bytes);
    EXPECT_EQ(to_bytes(back), bytes);
    EXPECT_EQ(back.seed(), 1u);
    expect_same_answers(o, AnyOracle{back}, 200, 1);
}

TEST(Serialize, ParameterizedRoundTrips) {
    auto g = random_graph(200, 800, 2);
    auto s = random_set(200, 30, 2);
    Rng a(2), b(2);
    auto p = build_ado_p(g, 2, s, a);
    auto pp = build_ado_pprime(g, 2, s, b);
    auto p2 = from_bytes<ParamOracle>(to_bytes(p));
    auto pp2 = from_bytes<RestrictedParamOracle>(to_bytes(pp));
    EXPECT_EQ(to_bytes(p2), to_bytes(p));
    EXPECT_EQ(to_bytes(pp2), to_bytes(pp));
    for (Vertex x : s) {
        for (Vertex y : s) EXPECT_EQ(pp2.query(x, y), pp.query(x, y));
    }
    EXPECT_THROW(from_bytes<RestrictedParamOracle>(to_bytes(p)), std::invalid_argument);
}

TEST(Serialize, HadoRoundTrip) {
    auto g = random_graph(300, 1500, 3);
    Rng rng(3);
    auto h = build_hado(g, 3, 0.5, rng);
    const auto bytes = to_bytes(h);
    auto back = from_bytes<Hado>(bytes);
    EXPECT_EQ(to_bytes(back), bytes);
    expect_same_answers(h, AnyOracle{back}, 300, 3);
}

TEST(Serialize, EveryCompositeRoundTrips) {
    struct Case {
        Algo algo;
        int k;
    };
    for (const Case c : {Case{Algo::w_subquadratic, 3}, Case{Algo::w_spanner_table, 4}, Case{Algo::w_spanner_ado, 16},
                         Case{Algo::u_add2, 3}, Case{Algo::u_add2k2, 3}, Case{Algo::u_add2k1, 13}}) {
        auto g = is_unweighted_algo(c.algo) ? unit_graph(250, 1200, 4) : random_graph(250, 1200, 4);
        auto o = build_algo(g, c.algo, c.k, 4);
        const auto bytes = to_bytes(o);
        auto back = from_bytes<CompositeOracle>(bytes);
        EXPECT_EQ(to_bytes(back), bytes) << algo_tag(c.algo);
        EXPECT_EQ(back.plan.algo, c.algo);
        EXPECT_EQ(back.plan.k_prime, o.plan.k_prime);
        EXPECT_EQ(back.guarantee.beta, o.guarantee.beta);
        expect_same_answers(o, AnyOracle{back}, 250, 4);
    }
}

TEST(Serialize, SameSeedSameBytes) {
    auto g = random_graph(300, 3000, 5);
    for (Algo a : {Algo::w_subquadratic, Algo::w_spanner_table}) {
        const int k = min_k(a);
        EXPECT_EQ(to_bytes(build_algo(g, a, k, 77)), to_bytes(build_algo(g, a, k, 77)));
        EXPECT_NE(to_bytes(build_algo(g, a, k, 77)), to_bytes(build_algo(g, a, k, 78)));
    }
}

TEST(Serialize, ThreadCountDoesNotChangeBytes) {
    auto g = random_graph(300, 3000, 6);
    EXPECT_EQ(to_bytes(build_algo(g, Algo::w_spanner_table, 4, 6, 1)), to_bytes(build_algo(g, Algo::w_spanner_table, 4, 6, 4)));
}

TEST(Serialize, StreamHelpers) {
    auto g = random_graph(100, 400, 7);
    auto o = build_w_subquadratic(g, 3, 7);
    std::stringstream ss;
    save_oracle(ss, AnyOracle{o});
    auto back = load_oracle(ss);
    ASSERT_TRUE(std::holds_alternative<CompositeOracle>(back));
    EXPECT_EQ(vertices_any(back), 100u);
    expect_same_answers(o, back, 100, 7);
}

TEST(Serialize, RejectsForeignAndTruncatedInput) {
    EXPECT_THROW(oracle_from_bytes(""), FormatError);
    EXPECT_THROW(oracle_from_bytes("p sp 3 2\ne 1 2 1\n"), FormatError);
    auto bytes = to_bytes(build_u_add2(unit_graph(60, 200, 8), 3, 8));
    for (std::size_t len = 0; len < bytes.size(); ++len) {
        EXPECT_THROW(oracle_from_bytes(std::string_view(bytes).substr(0, len)), FormatError) << "prefix " << len;
    }
    EXPECT_THROW(oracle_from_bytes(bytes + "x"), FormatError);
    auto version = bytes;
    version[4] = 9;
    EXPECT_THROW(oracle_from_bytes(version), FormatError);
    auto kind = bytes;
    kind[5] = 7;
    EXPECT_THROW(oracle_from_bytes(kind), FormatError);
    EXPECT_THROW(from_bytes<Hado>(bytes), FormatError);
}

TEST(Serialize, CorruptBytesNeverCrash) {
    auto g = random_graph(80, 300, 9);
    const auto bytes = to_bytes(build_w_spanner_table(g, 4, 9));
    Rng rng(9);
    std::size_t rejected = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto bad = bytes;
        const auto pos = uniform_below(rng, bad.size());
        bad[pos] = static_cast<char>(bad[pos] ^ static_cast<char>(1 + uniform_below(rng, 255)));
        try {
            auto o = oracle_from_bytes(bad);
            const auto n = vertices_any(o);
            for (Vertex u = 0; u < n; u += 7) {
                for (Vertex v = 0; v < n; v += 11) (void)query_any(o, u, v);
            }
        } catch (const std::exception&) {
            ++rejected;
        }
    }
    EXPECT_GT(rejected, 0u);
}
