// param_oracle.hpp - oracles parameterized by a vertex set S: ADO_P answers any pair with
// an extra 2*min(h_S) slack, ADO_P' keeps tables only for S and answers S x S.

#ifndef ADO_PARAM_ORACLE_HPP
#define ADO_PARAM_ORACLE_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "ado/bunch_oracle.hpp"

namespace ado {

class ParamOracle {
public:
    ParamOracle() = default;

    explicit ParamOracle(BunchOracle core) : core_(std::move(core)) {
        if (core_.mode() != OracleMode::parameterized) throw std::invalid_argument("ParamOracle: wrong oracle mode");
    }

    const BunchOracle& core() const { return core_; }
    int k() const { return core_.k(); }
    std::size_t num_vertices() const { return core_.num_vertices(); }
    std::span<const Vertex> set() const { return core_.levels().sets[1]; }

    Weight h_s(Vertex v) const { return core_.h(v, 1); }
    Vertex p_s(Vertex v) const { return core_.pivot(v, 1).vertex; }

    Weight query(Vertex u, Vertex v, QueryTrace* trace = nullptr) const { return core_.query(u, v, trace); }
    std::size_t entry_count() const { return core_.entry_count(); }
    std::size_t space_entries() const { return core_.space_entries(); }

private:
    BunchOracle core_;
};

class RestrictedParamOracle {
public:
    RestrictedParamOracle() = default;

    explicit RestrictedParamOracle(BunchOracle core) : core_(std::move(core)) {
        if (core_.mode() != OracleMode::restricted) throw std::invalid_argument("RestrictedParamOracle: wrong oracle mode");
    }

    const BunchOracle& core() const { return core_; }
    int k() const { return core_.k(); }
    std::size_t num_vertices() const { return core_.num_vertices(); }
    std::span<const Vertex> set() const { return core_.levels().sets[1]; }
    bool contains(Vertex v) const { return core_.has_table(v); }

    Weight query(Vertex s1, Vertex s2, QueryTrace* trace = nullptr) const {
        if (!contains(s1) || !contains(s2)) {
            throw std::domain_error("ADO_P' query: vertex " + std::to_string(contains(s1) ? s2 : s1) + " is not in S");
        }
        return core_.query(s1, s2, trace);
    }

    std::size_t entry_count() const { return core_.entry_count(); }
    std::size_t space_entries() const { return core_.space_entries(); }

private:
    BunchOracle core_;
};

inline ParamOracle build_ado_p(const Graph& g, int k, std::span<const Vertex> set, Rng& rng) {
    auto levels = build_param_levels(g.num_vertices(), k, set, rng);
    auto owners = all_vertices(g.num_vertices());
    return ParamOracle(detail::grow_bunches(g, std::move(levels), OracleMode::parameterized, k, owners));
}

// Same level sampling as build_ado_p (so identical seeds give the projection of its
// tables onto S); the searches still run over the whole graph.
inline RestrictedParamOracle build_ado_pprime(const Graph& g, int k, std::span<const Vertex> set, Rng& rng) {
    auto levels = build_param_levels(g.num_vertices(), k, set, rng);
    std::vector<Vertex> owners = levels.sets[1];
    return RestrictedParamOracle(detail::grow_bunches(g, std::move(levels), OracleMode::restricted, k, owners));
}

}  // namespace ado

#endif  // ADO_PARAM_ORACLE_HPP
