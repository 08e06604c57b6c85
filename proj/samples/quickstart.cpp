// Builds a (2k-1)-stretch oracle on a random weighted graph, queries a few pairs and
// audits a sample of pairs against exact distances.

#include <iostream>

#include "ado/ado.hpp"

int main() {
    ado::GenSpec spec;
    spec.model = ado::Model::gnm;
    spec.n = 1000;
    spec.m = 8000;
    spec.weights = ado::WeightDist::uniform;
    spec.max_weight = 1000;
    spec.seed = 7;
    const ado::Graph g = ado::gen_graph(spec);

    const auto oracle = ado::build_algo(g, ado::Algo::w_spanner_table, 4, /*seed=*/7);
    std::cout << "x0=" << oracle.plan.x0 << " k'=" << *oracle.plan.k_prime
              << " |S_t|=" << oracle.hado.terminal_set().size() << " entries=" << oracle.space_entries() << "\n";

    for (ado::Vertex v : {1u, 17u, 500u}) {
        const auto exact = ado::dijkstra(g, 0).dist[v];
        std::cout << "d(0," << v << ") = " << exact << ", estimate " << oracle.query(0, v) << "\n";
    }

    ado::AuditOptions opt;
    opt.exhaustive = false;
    opt.samples = 5000;
    const auto report = ado::audit_stretch(g, oracle, opt);
    std::cout << report.to_text();
    return report.passed() ? 0 : 1;
}
