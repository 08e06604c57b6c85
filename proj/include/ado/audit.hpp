// audit.hpp - ground truth for the oracles: graph generators, exact APSP, stretch audits
// with the local/far case split, space accounting and build benchmarks.

#ifndef ADO_AUDIT_HPP
#define ADO_AUDIT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ado/constructions.hpp"
#include "ado/util.hpp"

namespace ado {

// ---------------------------------------------------------------- generators

enum class Model { gnm, grid, path, star, cycle, clustered };
enum class WeightDist { unit, uniform, exp };

inline Model parse_model(std::string_view s) {
    if (s == "gnm") return Model::gnm;
    if (s == "grid") return Model::grid;
    if (s == "path") return Model::path;
    if (s == "star") return Model::star;
    if (s == "cycle") return Model::cycle;
    if (s == "clustered") return Model::clustered;
    throw std::invalid_argument("unknown graph model '" + std::string(s) + "'");
}

inline WeightDist parse_weights(std::string_view s) {
    if (s == "unit") return WeightDist::unit;
    if (s == "uniform") return WeightDist::uniform;
    if (s == "exp") return WeightDist::exp;
    throw std::invalid_argument("unknown weight distribution '" + std::string(s) + "'");
}

struct GenSpec {
    Model model = Model::gnm;
    std::size_t n = 0;
    std::size_t m = 0;              // gnm and clustered only
    WeightDist weights = WeightDist::unit;
    double max_weight = 100.0;      // W for uniform integers in [1, W]; mean for exp
    std::size_t clusters = 0;       // clustered; 0 picks about sqrt(n)
    std::uint64_t seed = 1;
};

inline Graph gen_graph(const GenSpec& spec) {
    const std::size_t n = spec.n;
    if (n == 0) throw std::invalid_argument("gen_graph: n must be >= 1");
    Rng rng(spec.seed);
    auto weight = [&]() -> Weight {
        switch (spec.weights) {
            case WeightDist::unit: return 1.0;
            case WeightDist::uniform:
                return 1.0 + static_cast<double>(uniform_below(rng, static_cast<std::uint64_t>(std::max(1.0, spec.max_weight))));
            case WeightDist::exp: return -std::log(1.0 - uniform01(rng)) * spec.max_weight;
        }
        return 1.0;
    };

    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> present;
    auto add = [&](Vertex a, Vertex b) {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        if (!present.insert((static_cast<std::uint64_t>(a) << 32) | b).second) return false;
        edges.push_back({a, b, weight()});
        return true;
    };

    switch (spec.model) {
        case Model::path:
            for (Vertex i = 0; i + 1 < n; ++i) add(i, i + 1);
            break;
        case Model::cycle:
            for (Vertex i = 0; i + 1 < n; ++i) add(i, i + 1);
            if (n >= 3) add(static_cast<Vertex>(n - 1), 0);
            break;
        case Model::star:
            for (Vertex i = 1; i < n; ++i) add(0, i);
            break;
        case Model::grid: {
            const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
            for (std::size_t i = 0; i < n; ++i) {
                if ((i + 1) % cols != 0 && i + 1 < n) add(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
                if (i + cols < n) add(static_cast<Vertex>(i), static_cast<Vertex>(i + cols));
            }
            break;
        }
        case Model::gnm:
        case Model::clustered: {
            const std::size_t m = spec.m;
            if (n > 1 && m < n - 1) throw std::invalid_argument("gen_graph: m < n-1 cannot be connected");
            if (static_cast<double>(m) > static_cast<double>(n) * (n - 1) / 2.0) {
                throw std::invalid_argument("gen_graph: m exceeds n(n-1)/2");
            }
            std::vector<Vertex> perm = all_vertices(n);
            for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
            for (std::size_t i = 1; i < n; ++i) add(perm[i], perm[uniform_below(rng, i)]);
            if (spec.model == Model::gnm) {
                while (edges.size() < m) add(static_cast<Vertex>(uniform_below(rng, n)), static_cast<Vertex>(uniform_below(rng, n)));
            } else {
                std::size_t c = spec.clusters ? spec.clusters : static_cast<std::size_t>(std::max(1.0, std::round(std::sqrt(static_cast<double>(n)))));
                c = std::min(c, n);
                // Members of cluster j are j, j + c, j + 2c, ...; nine in ten extra edges stay inside.
                std::size_t stalls = 0;
                while (edges.size() < m) {
                    const Vertex a = static_cast<Vertex>(uniform_below(rng, n));
                    Vertex b;
                    if (uniform01(rng) < 0.9) {
                        const std::size_t size = (n - 1 - a % c) / c + 1;
                        b = static_cast<Vertex>(a % c + c * uniform_below(rng, size));
                    } else {
                        b = static_cast<Vertex>(uniform_below(rng, n));
                    }
                    if (add(a, b)) {
                        stalls = 0;
                    } else if (++stalls > 64 * n) {
                        // Clusters are saturated; fill the rest uniformly.
                        while (edges.size() < m) add(static_cast<Vertex>(uniform_below(rng, n)), static_cast<Vertex>(uniform_below(rng, n)));
                    }
                }
            }
            break;
        }
    }
    return Graph(n, std::move(edges));
}

// FNV-1a over the canonical edge list; used to pin generator output.
inline std::uint64_t graph_hash(const Graph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(g.num_vertices());
    for (const auto& e : g.edges()) {
        mix(e.u);
        mix(e.v);
        mix(std::bit_cast<std::uint64_t>(e.w));
    }
    return h;
}

// ---------------------------------------------------------------- exact distances

inline constexpr std::size_t kDefaultApspCap = 2000;

struct DistanceTable {
    std::size_t n = 0;
    std::vector<Weight> d;

    Weight at(Vertex u, Vertex v) const { return d[static_cast<std::size_t>(u) * n + v]; }
};

inline DistanceTable exact_apsp(const Graph& g, std::size_t cap = kDefaultApspCap, unsigned threads = 1) {
    const std::size_t n = g.num_vertices();
    if (n > cap) throw std::length_error("exact_apsp: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    DistanceTable t{n, std::vector<Weight>(n * n, kInfinity)};
    const bool unit = g.is_unweighted();
    parallel_for(n, threads, [&](std::size_t s) {
        auto dm = unit ? bfs(g, static_cast<Vertex>(s)) : dijkstra(g, static_cast<Vertex>(s));
        std::copy(dm.dist.begin(), dm.dist.end(), t.d.begin() + static_cast<std::ptrdiff_t>(s * n));
    });
    return t;
}

// ---------------------------------------------------------------- stretch audit

inline bool within(double value, double bound, double rel = 1e-9) {
    return value <= bound + rel * std::max(1.0, std::abs(bound));
}

struct Violation {
    Vertex u = 0;
    Vertex v = 0;
    Weight d = 0.0;
    Weight estimate = 0.0;
    std::string what;
};

struct AuditOptions {
    bool exhaustive = true;
    std::size_t samples = 10000;  // sampled mode
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t keep_violations = 100;
    std::size_t apsp_cap = kDefaultApspCap;
};

struct AuditReport {
    std::string label;
    Guarantee guarantee;
    std::size_t pairs_checked = 0;
    std::size_t finite_pairs = 0;
    std::size_t violation_count = 0;
    std::vector<Violation> violations;  // first few
    double max_mult_slack = 0.0;        // max (estimate - beta)/d over d > 0
    double max_add_slack = 0.0;         // max (estimate - alpha d)
    std::size_t hado_case = 0;
    std::size_t far_case = 0;
    std::size_t covered = 0;            // finite pairs whose case chain was verified
    std::size_t space_entries = 0;
    std::vector<PhaseTime> wall_times;
    double ms_query_per_1k = 0.0;

    bool passed() const { return violation_count == 0; }
    double coverage_hado() const { return finite_pairs ? static_cast<double>(hado_case) / finite_pairs : 1.0; }
    double coverage_far() const { return finite_pairs ? static_cast<double>(far_case) / finite_pairs : 0.0; }
    double coverage() const { return finite_pairs ? static_cast<double>(covered) / finite_pairs : 1.0; }

    double ms_build() const {
        for (const auto& t : wall_times) {
            if (t.phase == "total") return t.ms;
        }
        double s = 0.0;
        for (const auto& t : wall_times) s += t.ms;
        return s;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << std::setprecision(6);
        os << "oracle " << label << "\n";
        os << "guarantee alpha=" << guarantee.alpha << " beta=" << guarantee.beta << "\n";
        os << "pairs " << pairs_checked << " finite " << finite_pairs << "\n";
        os << "violations " << violation_count << "\n";
        for (const auto& v : violations) {
            os << "  violation u=" << v.u << " v=" << v.v << " d=" << v.d << " est=" << v.estimate << " " << v.what << "\n";
        }
        os << "max_mult_slack " << max_mult_slack << "\n";
        os << "max_add_slack " << max_add_slack << "\n";
        os << "coverage hado=" << coverage_hado() << " far=" << coverage_far() << " verified=" << coverage() << "\n";
        os << "entries " << space_entries << "\n";
        for (const auto& t : wall_times) os << "time " << t.phase << " " << t.ms << " ms\n";
        os << "query " << ms_query_per_1k << " ms per 1k\n";
        os << (passed() ? "PASS" : "FAIL") << "\n";
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json viol = nlohmann::json::array();
        for (const auto& v : violations) {
            viol.push_back({{"u", v.u}, {"v", v.v}, {"d", v.d}, {"estimate", v.estimate}, {"what", v.what}});
        }
        return {{"pairs", pairs_checked},
                {"violations", viol},
                {"max_mult_slack", max_mult_slack},
                {"max_add_slack", max_add_slack},
                {"coverage_hado", coverage_hado()},
                {"coverage_far", coverage_far()},
                {"entries", space_entries},
                {"ms_build", ms_build()},
                {"ms_query_per_1k", ms_query_per_1k}};
    }
};

namespace detail {

// Pairs to audit, grouped by source so each source needs one exact search.
inline std::vector<std::pair<Vertex, Vertex>> audit_pairs(std::size_t n, const AuditOptions& opt) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (opt.exhaustive) {
        if (n > opt.apsp_cap) throw std::length_error("exhaustive audit: n exceeds the exact-distance cap");
        pairs.reserve(n * (n + 1) / 2);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u; v < n; ++v) pairs.emplace_back(u, v);
        }
    } else {
        Rng rng(opt.seed);
        for (std::size_t i = 0; i < opt.samples; ++i) {
            pairs.emplace_back(static_cast<Vertex>(uniform_below(rng, n)), static_cast<Vertex>(uniform_below(rng, n)));
        }
        std::sort(pairs.begin(), pairs.end());
    }
    return pairs;
}

struct PairResult {
    Weight d = kInfinity;
    Weight est = kInfinity;
    int case_kind = 0;  // 0 none / infinite, 1 hado, 2 far
    bool covered = false;
    std::string what;   // empty if fine
};

template <typename Classify>
AuditReport run_audit(const Graph& g, const std::string& label, Guarantee guarantee,
                      const std::function<Weight(Vertex, Vertex)>& estimate,
                      const std::function<double(Vertex, Vertex, Weight)>& upper, const AuditOptions& opt,
                      Classify&& classify) {
    const std::size_t n = g.num_vertices();
    AuditReport rep;
    rep.label = label;
    rep.guarantee = guarantee;
    auto pairs = audit_pairs(n, opt);

    // Bucket pairs per source.
    std::vector<std::size_t> start(n + 1, 0);
    for (const auto& p : pairs) ++start[p.first + 1];
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];

    std::vector<PairResult> results(pairs.size());
    const bool unit = g.is_unweighted();
    parallel_for(n, opt.threads, [&](std::size_t s) {
        if (start[s] == start[s + 1]) return;
        const auto dm = unit ? bfs(g, static_cast<Vertex>(s)) : dijkstra(g, static_cast<Vertex>(s));
        const auto state = classify.prepare(static_cast<Vertex>(s));
        for (std::size_t i = start[s]; i < start[s + 1]; ++i) {
            const auto [u, v] = pairs[i];
            auto& r = results[i];
            r.d = dm.dist[v];
            r.est = estimate(u, v);
            if (r.d == kInfinity) {
                if (r.est != kInfinity) r.what = "finite estimate for a disconnected pair";
                continue;
            }
            if (!within(r.d, r.est)) {
                r.what = "estimate below the true distance";
            } else if (!within(r.est, upper(u, v, r.d))) {
                r.what = "estimate above the guarantee";
            }
            classify(state, u, v, r);
        }
    });

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& r = results[i];
        ++rep.pairs_checked;
        if (r.d != kInfinity) {
            ++rep.finite_pairs;
            if (r.case_kind == 1) ++rep.hado_case;
            if (r.case_kind == 2) ++rep.far_case;
            if (r.covered) ++rep.covered;
            if (r.d > 0.0) rep.max_mult_slack = std::max(rep.max_mult_slack, (r.est - guarantee.beta) / r.d);
            rep.max_add_slack = std::max(rep.max_add_slack, r.est - guarantee.alpha * r.d);
        }
        if (!r.what.empty()) {
            ++rep.violation_count;
            if (rep.violations.size() < opt.keep_violations) {
                rep.violations.push_back({pairs[i].first, pairs[i].second, r.d, r.est, r.what});
            }
        }
    }

    // Query throughput on the audited pairs (first 10k).
    const std::size_t q = std::min<std::size_t>(pairs.size(), 10000);
    if (q > 0) {
        Stopwatch sw;
        volatile double sink = 0.0;
        for (std::size_t i = 0; i < q; ++i) sink = sink + estimate(pairs[i].first, pairs[i].second);
        rep.ms_query_per_1k = sw.elapsed_ms() * 1000.0 / static_cast<double>(q);
    }
    return rep;
}

struct NoClassify {
    int prepare(Vertex) const { return 0; }
    void operator()(int, Vertex, Vertex, PairResult& r) const { r.covered = true; }
};

}  // namespace detail

// Generic audit: `upper(u, v, d)` is the bound the estimate must respect.
inline AuditReport audit_stretch(const Graph& g, const std::string& label, Guarantee guarantee,
                                 const std::function<Weight(Vertex, Vertex)>& estimate,
                                 const std::function<double(Vertex, Vertex, Weight)>& upper,
                                 const AuditOptions& opt = {}) {
    return detail::run_audit(g, label, guarantee, estimate, upper, opt, detail::NoClassify{});
}

inline AuditReport audit_stretch(const Graph& g, const BunchOracle& o, const AuditOptions& opt = {}) {
    if (o.mode() == OracleMode::classic) {
        Guarantee gu{2.0 * o.k() - 1.0, 0.0};
        auto rep = audit_stretch(
            g, "tz k=" + std::to_string(o.k()), gu, [&](Vertex u, Vertex v) { return o.query(u, v); },
            [&](Vertex, Vertex, Weight d) { return gu.bound(d); }, opt);
        rep.space_entries = o.space_entries();
        return rep;
    }
    if (o.mode() == OracleMode::parameterized) {
        Guarantee gu{2.0 * o.k() - 1.0, 0.0};
        auto rep = audit_stretch(
            g, "ado-p k=" + std::to_string(o.k()), gu, [&](Vertex u, Vertex v) { return o.query(u, v); },
            [&](Vertex u, Vertex v, Weight d) { return 2.0 * std::min(o.h(u, 1), o.h(v, 1)) + gu.bound(d); }, opt);
        rep.space_entries = o.space_entries();
        return rep;
    }
    throw std::invalid_argument("audit: S x S oracles are audited through their composite");
}

// Composite audit with the case split: a pair is local when some shortest path survives
// in G_{S_t} (the hierarchical bound must hold), otherwise far (the far-path
// precondition and the far inequality chain must hold).
inline AuditReport audit_stretch(const Graph& g, const CompositeOracle& o, const AuditOptions& opt = {}) {
    const Graph gt = restricted_graph(g, o.nearest_t());
    const bool unweighted = is_unweighted_algo(o.plan.algo);
    const double alpha = 2.0 * o.plan.k - 1.0;
    const auto& nt = o.nearest_t();

    struct Classifier {
        const Graph& gt;
        const CompositeOracle& o;
        const NearestInfo& nt;
        bool unweighted;
        double alpha;

        std::vector<Weight> prepare(Vertex s) const { return dijkstra(gt, s).dist; }

        void operator()(const std::vector<Weight>& dt, Vertex u, Vertex v, detail::PairResult& r) const {
            const Weight d = r.d;
            if (dt[v] <= d) {
                r.case_kind = 1;
                const Weight est = o.hado_query(u, v);
                r.covered = within(est, alpha * d);
                if (!r.covered && r.what.empty()) r.what = "local pair above the hierarchical bound";
                return;
            }
            r.case_kind = 2;
            const Weight hu = nt.h[u], hv = nt.h[v];
            const bool pre = unweighted ? within(hu + hv, d + 1.0) : within(std::max(hu, hv), d);
            const Weight est = o.far_query(u, v);
            const bool chain = within(est, o.far_chain_bound(hu, hv, d)) && within(est, o.far_case_bound(d)) &&
                               within(o.far_case_bound(d), o.guarantee.bound(d));
            r.covered = pre && chain;
            if (!r.covered && r.what.empty()) {
                r.what = pre ? "far pair breaks the far-path chain" : "far pair breaks the far-path precondition";
            }
        }
    };

    auto rep = detail::run_audit(
        g, std::string(algo_tag(o.plan.algo)) + " k=" + std::to_string(o.plan.k), o.guarantee,
        [&](Vertex u, Vertex v) { return o.query(u, v); },
        [&](Vertex, Vertex, Weight d) { return o.guarantee.bound(d); }, opt,
        Classifier{gt, o, nt, unweighted, alpha});
    rep.space_entries = o.space_entries();
    rep.wall_times = o.timings;
    return rep;
}

// ---------------------------------------------------------------- lemma checks

struct FarLemmaResult {
    std::size_t pairs = 0;
    std::size_t leaving = 0;     // pairs whose every shortest path leaves G_S
    std::size_t violations = 0;
};

// For every pair whose distance grows in G_S: max(h) <= d (weighted) or h(u)+h(v) <= d+1 (unweighted).
inline FarLemmaResult check_far_path_lemma(const Graph& g, const NearestInfo& info, bool unweighted_form) {
    const Graph gs = restricted_graph(g, info);
    const auto dg = exact_apsp(g);
    const auto ds = exact_apsp(gs);
    FarLemmaResult res;
    const std::size_t n = g.num_vertices();
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            const Weight d = dg.at(u, v);
            if (d == kInfinity) continue;
            ++res.pairs;
            if (ds.at(u, v) <= d) continue;
            ++res.leaving;
            const bool ok = unweighted_form ? within(info.h[u] + info.h[v], d + 1.0) : within(std::max(info.h[u], info.h[v]), d);
            if (!ok) ++res.violations;
        }
    }
    return res;
}

// ---------------------------------------------------------------- space and time

struct SpaceBreakdown {
    std::vector<std::pair<std::string, std::size_t>> parts;

    std::size_t total() const {
        std::size_t s = 0;
        for (const auto& p : parts) s += p.second;
        return s;
    }
};

inline SpaceBreakdown measure_space(const BunchOracle& o) {
    return {{{"bunch", o.entry_count()}, {"pivot", o.space_entries() - o.entry_count()}}};
}
inline SpaceBreakdown measure_space(const ParamOracle& o) { return measure_space(o.core()); }
inline SpaceBreakdown measure_space(const RestrictedParamOracle& o) { return measure_space(o.core()); }

inline SpaceBreakdown measure_space(const Hado& h) {
    SpaceBreakdown b;
    b.parts.emplace_back("hado.base", h.base.space_entries());
    std::size_t lv = 0;
    for (const auto& l : h.levels) lv += l.space_entries();
    b.parts.emplace_back("hado.levels", lv);
    b.parts.emplace_back("hado.nearest", 2 * h.nearest_t.size());
    return b;
}

inline SpaceBreakdown measure_space(const CompositeOracle& o) {
    auto b = measure_space(o.hado);
    b.parts.emplace_back("far", o.far_entries());
    return b;
}

struct PhaseStats {
    std::string phase;
    double median_ms = 0.0;
    double iqr_ms = 0.0;
};

struct BenchSummary {
    int reps = 0;
    std::vector<PhaseStats> phases;  // includes "total"
};

inline PhaseStats summarize_times(const std::string& phase, std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    auto q = [&](double f) {
        const double pos = f * (xs.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        return xs[lo] + (xs[hi] - xs[lo]) * (pos - lo);
    };
    return {phase, q(0.5), q(0.75) - q(0.25)};
}

inline BenchSummary bench_build(const Graph& g, const BuildPlan& plan, int reps, unsigned threads = 1) {
    if (reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
    std::vector<std::string> order;
    std::vector<std::vector<double>> samples;
    for (int r = 0; r < reps; ++r) {
        auto o = build_composite(g, plan, threads);
        for (const auto& t : o.timings) {
            auto it = std::find(order.begin(), order.end(), t.phase);
            if (it == order.end()) {
                order.push_back(t.phase);
                samples.emplace_back();
                it = order.end() - 1;
            }
            samples[static_cast<std::size_t>(it - order.begin())].push_back(t.ms);
        }
    }
    BenchSummary out;
    out.reps = reps;
    for (std::size_t i = 0; i < order.size(); ++i) out.phases.push_back(summarize_times(order[i], samples[i]));
    return out;
}

}  // namespace ado

#endif  // ADO_AUDIT_HPP
