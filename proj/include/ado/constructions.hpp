// constructions.hpp - the six end-to-end oracles: a hierarchical oracle for pairs whose
// shortest path stays local, plus a far-path component routed through S_t pivots.

#ifndef ADO_CONSTRUCTIONS_HPP
#define ADO_CONSTRUCTIONS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ado/hado.hpp"
#include "ado/param_oracle.hpp"
#include "ado/spanner.hpp"
#include "ado/util.hpp"

namespace ado {

enum class Algo : std::uint8_t {
    w_subquadratic = 0,
    w_spanner_table = 1,
    w_spanner_ado = 2,
    u_add2 = 3,
    u_add2k2 = 4,
    u_add2k1 = 5,
};

inline constexpr std::array<Algo, 6> kAllAlgos{Algo::w_subquadratic, Algo::w_spanner_table, Algo::w_spanner_ado,
                                               Algo::u_add2,         Algo::u_add2k2,        Algo::u_add2k1};

inline std::string_view algo_tag(Algo a) {
    switch (a) {
        case Algo::w_subquadratic: return "w-subquadratic";
        case Algo::w_spanner_table: return "w-spanner-table";
        case Algo::w_spanner_ado: return "w-spanner-ado";
        case Algo::u_add2: return "u-add2";
        case Algo::u_add2k2: return "u-add2k2";
        case Algo::u_add2k1: return "u-add2k1";
    }
    throw std::invalid_argument("unknown algorithm id");
}

inline Algo parse_algo(std::string_view tag) {
    for (Algo a : kAllAlgos) {
        if (algo_tag(a) == tag) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(tag) + "'");
}

inline bool is_unweighted_algo(Algo a) { return a == Algo::u_add2 || a == Algo::u_add2k2 || a == Algo::u_add2k1; }

inline int min_k(Algo a) {
    switch (a) {
        case Algo::w_subquadratic: return 3;
        case Algo::w_spanner_table: return 4;
        case Algo::w_spanner_ado: return 16;
        case Algo::u_add2: return 3;
        case Algo::u_add2k2: return 3;
        case Algo::u_add2k1: return 13;
    }
    return 3;
}

// (alpha, beta): d <= estimate <= alpha d + beta.
struct Guarantee {
    double alpha = 1.0;
    double beta = 0.0;

    double bound(double d) const { return alpha * d + beta; }
};

inline Guarantee guarantee_for(Algo a, int k) {
    const double alpha = 2.0 * k - 1.0;
    switch (a) {
        case Algo::u_add2: return {alpha, 2.0};
        case Algo::u_add2k2: return {alpha, 2.0 * k - 2.0};
        case Algo::u_add2k1: return {alpha, 2.0 * k - 1.0};
        default: return {alpha, 0.0};
    }
}

inline constexpr double kMaxX0 = 1.0 - 1e-9;

inline double clamp_x0(int k, double x0) { return std::clamp(x0, 1.0 / k, kMaxX0); }

// x0 = max(1/k, (L k^2 - 2 L k - k^2 + 2k + 1) / (k(k-1))) with L = log_n m.
inline double solve_x0_subquadratic(std::size_t n, std::size_t m, int k) {
    if (k < 3) throw std::invalid_argument("w-subquadratic: k must be >= 3");
    if (n < 2) throw std::invalid_argument("w-subquadratic: need n >= 2");
    if (m < n) throw std::invalid_argument("w-subquadratic: need m >= n");
    const double kd = k;
    const double L = std::log(static_cast<double>(m)) / std::log(static_cast<double>(n));
    const double x = (L * kd * kd - 2.0 * L * kd - kd * kd + 2.0 * kd + 1.0) / (kd * (kd - 1.0));
    return clamp_x0(k, std::max(1.0 / kd, x));
}

// Lower end of x0 for which the |S_t|^2 table fits in O(n^{1+1/k}).
inline double table_space_floor(int k) {
    const double kd = k;
    return 0.5 - 1.0 / kd + 1.0 / (kd * (kd - 1.0));
}

struct SpannerTableParams {
    double x0;
    int k_prime;
    double raw_x0;
};

// The balancing x0 for the exact-table constructions, and the spanner parameter.
inline SpannerTableParams solve_params_spanner_table(int k, Algo variant) {
    const double kd = k;
    double x0 = 0.0;
    int kp = 0;
    switch (variant) {
        case Algo::w_spanner_table:
            if (k < 4) throw std::invalid_argument("w-spanner-table: k must be >= 4");
            x0 = (kd * kd - 2.0 * kd + 3.0) / (kd * (2.0 * kd - 3.0));
            kp = k - 2;
            break;
        case Algo::u_add2:
            if (k < 3) throw std::invalid_argument("u-add2: k must be >= 3");
            x0 = (kd * kd * kd - 3.0 * kd * kd + 4.0 * kd - 3.0) / (kd * (2.0 * kd * kd - 5.0 * kd + 3.0));
            kp = k - 1;
            break;
        case Algo::u_add2k2:
            if (k < 3) throw std::invalid_argument("u-add2k2: k must be >= 3");
            x0 = (2.0 * kd * kd * kd - 8.0 * kd * kd + 13.0 * kd - 9.0) / (kd * (2.0 * kd - 3.0) * (2.0 * kd - 3.0));
            kp = 2 * k - 3;
            break;
        default: throw std::invalid_argument("solve_params_spanner_table: not an exact-table construction");
    }
    return {clamp_x0(k, std::max(x0, table_space_floor(k))), kp, x0};
}

struct SpannerAdoParams {
    double x0;
    int k_prime;
    int k_dprime;
    double raw_x0;
    double raw_k_prime;
    double raw_k_dprime;
    double exponent;  // 1/k' + (1 - x_t)/k''
};

// Stretch requirement on the far path for the ADO_P'-over-spanner constructions.
inline bool spanner_ado_feasible(int k, int kp, int kdp, bool unweighted) {
    if (kp < 1 || kdp < 1) return false;
    const long long lhs = unweighted ? 1LL + (2LL * kdp - 1) * (kp + 1LL) : 2LL + (2LL * kdp - 1) * (2LL * kp + 1);
    return lhs <= 2LL * k - 1;
}

// x0 balancing 1/k' + (1 - x_t)/k'' = x0 + 1/k with x_t = a x0 - b.
inline double rebalance_x0(int k, int kp, int kdp) {
    const double kd = k;
    const double a = (kd - 1.0) / (kd - 2.0);
    const double b = 1.0 / (kd * (kd - 2.0));
    return (1.0 / kp + (1.0 + b) / kdp - 1.0 / kd) / (1.0 + a / kdp);
}

inline SpannerAdoParams solve_params_spanner_ado(int k, bool unweighted) {
    const double kd = k;
    SpannerAdoParams out{};
    if (!unweighted) {
        if (k < 16) throw std::invalid_argument("w-spanner-ado: k must be >= 16");
        const double s = std::sqrt(8.0 * kd * kd * kd - 32.0 * kd + 25.0);
        out.raw_k_prime = (s + 4.0 * kd - 5.0) / (4.0 * (kd - 1.0));
        out.raw_k_dprime = (s - 4.0 * kd + 3.0) / (4.0 * (kd - 2.0));
        out.raw_x0 = (s - 5.0 * kd + 6.0) / (kd * (kd - 1.0));
    } else {
        if (k < 13) throw std::invalid_argument("u-add2k1: k must be >= 13");
        const double s = std::sqrt(16.0 * kd * kd * kd - 15.0 * kd * kd - 32.0 * kd + 32.0);
        out.raw_k_dprime = (s - 5.0 * kd + 4.0) / (4.0 * (kd - 2.0));
        out.raw_k_prime = (s + 3.0 * kd - 4.0) / (4.0 * (kd - 1.0));
        out.raw_x0 = (kd * s - 5.0 * kd * kd + 5.0 * kd + 2.0) / (kd * (2.0 * kd * kd - kd - 2.0));
    }
    const double a = (kd - 1.0) / (kd - 2.0);
    const double b = 1.0 / (kd * (kd - 2.0));
    bool found = false;
    for (int kp : {static_cast<int>(std::floor(out.raw_k_prime)), static_cast<int>(std::ceil(out.raw_k_prime))}) {
        for (int kdp : {static_cast<int>(std::floor(out.raw_k_dprime)), static_cast<int>(std::ceil(out.raw_k_dprime))}) {
            kp = std::max(kp, 1);
            kdp = std::max(kdp, 1);
            if (!spanner_ado_feasible(k, kp, kdp, unweighted)) continue;
            const double x0 = clamp_x0(k, rebalance_x0(k, kp, kdp));
            const double exponent = 1.0 / kp + (1.0 - (a * x0 - b)) / kdp;
            if (!found || exponent < out.exponent) {
                found = true;
                out.k_prime = kp;
                out.k_dprime = kdp;
                out.x0 = x0;
                out.exponent = exponent;
            }
        }
    }
    if (!found) throw std::logic_error("solve_params_spanner_ado: no integer (k', k'') satisfies the stretch inequality");
    return out;
}

struct BuildPlan {
    Algo algo = Algo::w_subquadratic;
    int k = 3;
    double x0 = 0.5;
    std::optional<int> k_prime;
    std::optional<int> k_dprime;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};

// Solves every parameter of a construction for a graph with n vertices and m edges.
inline BuildPlan make_plan(Algo algo, int k, std::size_t n, std::size_t m, std::uint64_t seed) {
    if (k < min_k(algo)) {
        std::string hint = is_unweighted_algo(algo) ? "u-add2 or u-add2k2 (k >= 3)" : "w-subquadratic (k >= 3) or w-spanner-table (k >= 4)";
        throw std::invalid_argument(std::string(algo_tag(algo)) + " needs k >= " + std::to_string(min_k(algo)) +
                                    "; for smaller k use " + hint);
    }
    BuildPlan plan;
    plan.algo = algo;
    plan.k = k;
    plan.seed = seed;
    switch (algo) {
        case Algo::w_subquadratic: {
            const std::size_t nn = std::max<std::size_t>(n, 2);
            const std::size_t mm = std::max(m, nn);
            if (mm != m) plan.notes.push_back("m < n: solved x0 with m = n");
            plan.x0 = solve_x0_subquadratic(nn, mm, k);
            break;
        }
        case Algo::w_spanner_table:
        case Algo::u_add2:
        case Algo::u_add2k2: {
            auto p = solve_params_spanner_table(k, algo);
            plan.x0 = p.x0;
            plan.k_prime = p.k_prime;
            if (p.x0 != p.raw_x0) {
                std::ostringstream os;
                os << "x0 clamped from " << p.raw_x0 << " to " << p.x0;
                plan.notes.push_back(os.str());
            }
            break;
        }
        case Algo::w_spanner_ado:
        case Algo::u_add2k1: {
            auto p = solve_params_spanner_ado(k, algo == Algo::u_add2k1);
            plan.x0 = p.x0;
            plan.k_prime = p.k_prime;
            plan.k_dprime = p.k_dprime;
            std::ostringstream os;
            os << "rounded k'=" << p.raw_k_prime << " -> " << p.k_prime << ", k''=" << p.raw_k_dprime << " -> "
               << p.k_dprime << "; x0 rebalanced " << p.raw_x0 << " -> " << p.x0;
            plan.notes.push_back(os.str());
            break;
        }
    }
    return plan;
}

// Exact spanner distances among the members of S_t, stored as a full symmetric matrix.
struct ExactTable {
    std::vector<Vertex> members;  // sorted
    std::vector<Weight> dist;     // row-major members.size()^2

    std::size_t index(Vertex s) const {
        auto it = std::lower_bound(members.begin(), members.end(), s);
        if (it == members.end() || *it != s) throw std::out_of_range("exact table: vertex not in S_t");
        return static_cast<std::size_t>(it - members.begin());
    }

    Weight at(Vertex a, Vertex b) const { return dist[index(a) * members.size() + index(b)]; }
    std::size_t entries() const { return dist.size(); }
};

inline ExactTable build_exact_table(const Graph& h, std::span<const Vertex> set, unsigned threads = 1) {
    ExactTable t;
    t.members.assign(set.begin(), set.end());
    std::sort(t.members.begin(), t.members.end());
    const std::size_t s = t.members.size();
    t.dist.assign(s * s, kInfinity);
    parallel_for(s, threads, [&](std::size_t i) {
        auto dm = dijkstra(h, t.members[i]);
        for (std::size_t j = 0; j < s; ++j) t.dist[i * s + j] = dm.dist[t.members[j]];
    });
    return t;
}

// What is kept from the spanner once the far component is built.
struct SpannerSummary {
    int k_spanner = 0;
    int additive = 0;
    std::size_t edges = 0;
    std::size_t augmented = 0;
    int attempts = 0;
    bool over_budget = false;

    friend bool operator==(const SpannerSummary&, const SpannerSummary&) = default;
};

struct TableFar {
    ExactTable table;
    SpannerSummary spanner;
};

struct SpannerAdoFar {
    RestrictedParamOracle oracle;
    SpannerSummary spanner;
};

using FarComponent = std::variant<ParamOracle, TableFar, SpannerAdoFar>;

struct PhaseTime {
    std::string phase;
    double ms = 0.0;
};

struct CompositeOracle {
    BuildPlan plan;
    Hado hado;
    FarComponent far;
    Guarantee guarantee;
    std::vector<PhaseTime> timings;
    std::optional<SpannerResult> spanner;  // the augmented spanner, only right after a build

    std::size_t num_vertices() const { return hado.num_vertices(); }
    const NearestInfo& nearest_t() const { return hado.nearest_t; }

    Weight hado_query(Vertex u, Vertex v) const { return hado.query(u, v); }

    Weight far_query(Vertex u, Vertex v) const {
        if (u == v) return 0.0;
        const auto& nt = hado.nearest_t;
        if (const auto* p = std::get_if<ParamOracle>(&far)) return p->query(u, v);
        if (nt.p[u] == kNoVertex || nt.p[v] == kNoVertex) return kInfinity;
        const Weight hu = nt.h[u], hv = nt.h[v];
        if (const auto* t = std::get_if<TableFar>(&far)) return hu + t->table.at(nt.p[u], nt.p[v]) + hv;
        const auto& f = std::get<SpannerAdoFar>(far);
        return hu + f.oracle.query(nt.p[u], nt.p[v]) + hv;
    }

    Weight query(Vertex u, Vertex v) const {
        if (u >= num_vertices() || v >= num_vertices()) throw std::out_of_range("query: vertex out of range");
        return std::min(hado_query(u, v), far_query(u, v));
    }

    std::size_t far_entries() const {
        return std::visit(
            [](const auto& f) -> std::size_t {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, ParamOracle>) {
                    return f.space_entries();
                } else if constexpr (std::is_same_v<T, TableFar>) {
                    return f.table.entries();
                } else {
                    return f.oracle.space_entries();
                }
            },
            far);
    }

    std::size_t space_entries() const { return hado.space_entries() + far_entries(); }

    // Far estimate bound before the far-case precondition is applied; hu, hv are h_{S_t}.
    double far_chain_bound(Weight hu, Weight hv, Weight d) const {
        const double k = plan.k;
        switch (plan.algo) {
            case Algo::w_subquadratic: return 2.0 * std::min(hu, hv) + (2.0 * k - 3.0) * d;
            case Algo::w_spanner_table:
            case Algo::u_add2: {
                const double kp = *plan.k_prime;
                return 2.0 * (hu + hv) + (2.0 * kp - 1.0) * d;
            }
            case Algo::u_add2k2: {
                const double kp = *plan.k_prime;
                return 2.0 * (hu + hv) + kp * d + kp - 1.0;
            }
            case Algo::w_spanner_ado: {
                const double kp = *plan.k_prime, kdp = *plan.k_dprime;
                return hu + hv + (2.0 * kdp - 1.0) * (hu + hv + (2.0 * kp - 1.0) * d);
            }
            case Algo::u_add2k1: {
                const double kp = *plan.k_prime, kdp = *plan.k_dprime;
                return hu + hv + (2.0 * kdp - 1.0) * (hu + hv + kp * d + kp - 1.0);
            }
        }
        return kInfinity;
    }

    // Far estimate bound once max(h) <= d (weighted) or h(u) + h(v) <= d + 1 (unweighted).
    double far_case_bound(Weight d) const {
        const double k = plan.k;
        switch (plan.algo) {
            case Algo::w_subquadratic: return (2.0 * k - 1.0) * d;
            case Algo::w_spanner_table: return (2.0 * *plan.k_prime + 3.0) * d;
            case Algo::w_spanner_ado: {
                const double kp = *plan.k_prime, kdp = *plan.k_dprime;
                return (2.0 + (2.0 * kdp - 1.0) * (2.0 * kp + 1.0)) * d;
            }
            case Algo::u_add2: return (2.0 * *plan.k_prime + 1.0) * d + 2.0;
            case Algo::u_add2k2: {
                const double kp = *plan.k_prime;
                return (kp + 2.0) * d + kp + 1.0;
            }
            case Algo::u_add2k1: {
                const double kp = *plan.k_prime, kdp = *plan.k_dprime;
                return (1.0 + (2.0 * kdp - 1.0) * (kp + 1.0)) * d + 1.0 + (2.0 * kdp - 1.0) * kp;
            }
        }
        return kInfinity;
    }
};

inline SpannerSummary summarize(const SpannerResult& sp) {
    return {sp.k_spanner, sp.additive, sp.h.num_edges(), sp.augmented, sp.attempts, sp.over_budget};
}

// Builds the oracle described by `plan`; the plan's seed drives every random choice.
inline CompositeOracle build_composite(const Graph& g, const BuildPlan& plan, unsigned threads = 1) {
    if (plan.k < min_k(plan.algo)) {
        throw std::invalid_argument(std::string(algo_tag(plan.algo)) + " needs k >= " + std::to_string(min_k(plan.algo)));
    }
    if (is_unweighted_algo(plan.algo) && !g.is_unweighted()) {
        throw std::invalid_argument(std::string(algo_tag(plan.algo)) + " needs an unweighted graph");
    }
    const bool needs_kp = plan.algo != Algo::w_subquadratic;
    const bool needs_kdp = plan.algo == Algo::w_spanner_ado || plan.algo == Algo::u_add2k1;
    if ((needs_kp && !plan.k_prime) || (needs_kdp && !plan.k_dprime)) {
        throw std::invalid_argument("build plan is missing spanner parameters");
    }

    Rng rng(plan.seed);
    CompositeOracle o;
    o.plan = plan;
    o.guarantee = guarantee_for(plan.algo, plan.k);
    Stopwatch total, lap;

    o.hado = build_hado(g, plan.k, plan.x0, rng);
    o.timings.push_back({"hado", lap.lap_ms()});
    const auto& st = o.hado.terminal_set();

    if (plan.algo == Algo::w_subquadratic) {
        o.far = build_ado_p(g, plan.k - 1, st, rng);
        o.timings.push_back({"far", lap.lap_ms()});
    } else {
        const int kp = *plan.k_prime;
        SpannerResult sp = (plan.algo == Algo::u_add2k2 || plan.algo == Algo::u_add2k1)
                               ? bkmp_spanner_unweighted(g, kp, rng)
                               : baswana_sen_spanner(g, kp, rng);
        sp = augment_with_pivots(sp, o.hado.nearest_t);
        o.timings.push_back({"spanner", lap.lap_ms()});
        if (plan.algo == Algo::w_spanner_ado || plan.algo == Algo::u_add2k1) {
            o.far = SpannerAdoFar{build_ado_pprime(sp.h, *plan.k_dprime, st, rng), summarize(sp)};
        } else {
            if (plan.x0 < table_space_floor(plan.k) - 1e-12) {
                o.plan.notes.push_back("x0 below the table space floor");
            }
            o.far = TableFar{build_exact_table(sp.h, st, threads), summarize(sp)};
        }
        o.timings.push_back({"far", lap.lap_ms()});
        o.spanner = std::move(sp);
    }
    o.timings.push_back({"total", total.elapsed_ms()});
    return o;
}

inline CompositeOracle build_algo(const Graph& g, Algo algo, int k, std::uint64_t seed, unsigned threads = 1) {
    return build_composite(g, make_plan(algo, k, g.num_vertices(), g.num_edges(), seed), threads);
}

inline CompositeOracle build_w_subquadratic(const Graph& g, int k, std::uint64_t seed) { return build_algo(g, Algo::w_subquadratic, k, seed); }
inline CompositeOracle build_w_spanner_table(const Graph& g, int k, std::uint64_t seed) { return build_algo(g, Algo::w_spanner_table, k, seed); }
inline CompositeOracle build_w_spanner_ado(const Graph& g, int k, std::uint64_t seed) { return build_algo(g, Algo::w_spanner_ado, k, seed); }
inline CompositeOracle build_u_add2(const Graph& g, int k, std::uint64_t seed) { return build_algo(g, Algo::u_add2, k, seed); }
inline CompositeOracle build_u_add2k2(const Graph& g, int k, std::uint64_t seed) { return build_algo(g, Algo::u_add2k2, k, seed); }
inline CompositeOracle build_u_add2k1(const Graph& g, int k, std::uint64_t seed) { return build_algo(g, Algo::u_add2k1, k, seed); }

}  // namespace ado

#endif  // ADO_CONSTRUCTIONS_HPP
