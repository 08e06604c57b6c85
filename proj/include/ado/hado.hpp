// hado.hpp - the hierarchical oracle: a ladder of parameterized oracles over restricted
// graphs G_{S_0} ⊆ ... with S_0 ⊇ S_1 ⊇ ... ⊇ S_t.

#ifndef ADO_HADO_HPP
#define ADO_HADO_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ado/bunch_oracle.hpp"
#include "ado/param_oracle.hpp"
#include "ado/shortest_paths.hpp"

namespace ado {

inline constexpr double kSeriesTolerance = 1e-12;

// x_j = ((k-1)/(k-2)) x0 - 1/(k(k-2)) + ((1 - x0 k)/(k(k-2))) (1/(k-1))^j
inline double x_closed_form(int k, double x0, int j) {
    const double kd = k;
    return (kd - 1.0) / (kd - 2.0) * x0 - 1.0 / (kd * (kd - 2.0)) +
           (1.0 - x0 * kd) / (kd * (kd - 2.0)) * std::pow(1.0 / (kd - 1.0), j);
}

// lim_{j->inf} x_j
inline double x_limit(int k, double x0) {
    const double kd = k;
    return (kd - 1.0) / (kd - 2.0) * x0 - 1.0 / (kd * (kd - 2.0));
}

inline void check_ladder_domain(int k, double x0) {
    if (k < 3) throw std::invalid_argument("hierarchical oracle: k must be >= 3");
    if (!(x0 >= 1.0 / k - kSeriesTolerance) || !(x0 < 1.0)) {
        throw std::invalid_argument("hierarchical oracle: x0 must lie in [1/k, 1)");
    }
}

// x_0..x_t by x_i = x0 - 1/(k(k-1)) + x_{i-1}/(k-1), cross-checked against the closed form.
inline std::vector<double> x_sequence(int k, double x0, int t) {
    check_ladder_domain(k, x0);
    if (t < 0) throw std::invalid_argument("x_sequence: t must be >= 0");
    const double kd = k;
    std::vector<double> xs{x0};
    for (int i = 1; i <= t; ++i) xs.push_back(x0 + (xs.back() - 1.0 / kd) / (kd - 1.0));
    for (int j = 0; j <= t; ++j) {
        if (std::abs(xs[j] - x_closed_form(k, x0, j)) > kSeriesTolerance) {
            throw std::logic_error("x_sequence: recurrence and closed form disagree at j=" + std::to_string(j));
        }
    }
    return xs;
}

// t = max(1, ceil(log2 log2 n)).
inline int ladder_depth(std::size_t n) {
    if (n < 4) return 1;
    const double ll = std::log2(std::log2(static_cast<double>(n)));
    return std::max(1, static_cast<int>(std::ceil(ll - 1e-12)));
}

struct HadoParams {
    int k = 3;
    double x0 = 0.5;
    int t = 1;
    std::vector<double> xs;

    static HadoParams make(std::size_t n, int k, double x0) {
        HadoParams p;
        p.k = k;
        p.x0 = x0;
        p.t = ladder_depth(n);
        p.xs = x_sequence(k, x0, p.t);
        return p;
    }
};

struct HadoReport {
    std::vector<std::string> warnings;
    std::vector<std::size_t> s_sizes;            // |S_0| .. |S_t|
    std::vector<std::size_t> restricted_edges;   // |E(G_{S_0})| .. |E(G_{S_t})|
    SearchStats stats;
};

struct Hado {
    HadoParams params;
    BunchOracle base;                     // classic, on G_{S_0}, parameter k
    std::vector<ParamOracle> levels;      // levels[i-1] = ADO_P(G_{S_i}, k-1, S_{i-1})
    std::vector<std::vector<Vertex>> s_sets;
    NearestInfo nearest_t;                // h, p for S_t on G
    HadoReport report;

    std::size_t num_vertices() const { return base.num_vertices(); }
    const std::vector<Vertex>& terminal_set() const { return s_sets.back(); }

    Weight query(Vertex u, Vertex v) const {
        Weight best = base.query(u, v);
        for (const auto& lv : levels) best = std::min(best, lv.query(u, v));
        return best;
    }

    std::size_t space_entries() const {
        std::size_t total = base.space_entries();
        for (const auto& lv : levels) total += lv.space_entries();
        return total + 2 * nearest_t.size();
    }
};

namespace detail {

inline double ladder_target(std::size_t n, double x, std::size_t universe, int level, HadoReport& report) {
    double target = std::pow(static_cast<double>(n), 1.0 - x);
    if (target < 1.0) {
        std::ostringstream os;
        os << "S_" << level << " target n^(1-x) = " << target << " < 1, clamped to 1";
        report.warnings.push_back(os.str());
        target = 1.0;
    }
    return std::min(target, static_cast<double>(universe));
}

}  // namespace detail

inline Hado build_hado(const Graph& g, int k, double x0, Rng& rng) {
    check_ladder_domain(k, x0);
    const std::size_t n = g.num_vertices();
    if (n == 0) throw std::invalid_argument("hierarchical oracle: empty graph");
    Hado hd;
    hd.params = HadoParams::make(n, k, x0);
    auto& rep = hd.report;

    auto universe = all_vertices(n);
    hd.s_sets.push_back(sample_subset(universe, detail::ladder_target(n, x0, n, 0, rep), rng));
    NearestInfo info = nearest_in_set(g, hd.s_sets[0], &rep.stats);
    Graph restricted = restricted_graph(g, info);
    rep.s_sizes.push_back(hd.s_sets[0].size());
    rep.restricted_edges.push_back(restricted.num_edges());
    hd.base = build_tz(restricted, k, rng);
    rep.stats += hd.base.build_stats();

    for (int i = 1; i <= hd.params.t; ++i) {
        const auto& prev = hd.s_sets.back();
        auto next = sample_subset(prev, detail::ladder_target(n, hd.params.xs[i], prev.size(), i, rep), rng);
        info = nearest_in_set(g, next, &rep.stats);
        restricted = restricted_graph(g, info);
        rep.s_sizes.push_back(next.size());
        rep.restricted_edges.push_back(restricted.num_edges());
        hd.levels.push_back(build_ado_p(restricted, k - 1, prev, rng));
        rep.stats += hd.levels.back().core().build_stats();
        hd.s_sets.push_back(std::move(next));
    }
    hd.nearest_t = std::move(info);
    return hd;
}

}  // namespace ado

#endif  // ADO_HADO_HPP
