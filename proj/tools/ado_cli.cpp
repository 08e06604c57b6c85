// ado - build, query and audit approximate distance oracles from the command line.
//
// Exit codes: 0 ok, 1 audit found a guarantee violation, 2 usage error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ado/ado.hpp"

namespace {

using namespace ado;
using nlohmann::json;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "text";
    unsigned threads = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Graph load_graph_file(const std::string& path) {
    const auto text = read_file(path);
    try {
        return parse_graph(text);
    } catch (const GraphFormatError& e) {
        throw IoError(path + ": " + e.what());
    }
}

AnyOracle load_oracle_file(const std::string& path) {
    const auto bytes = read_file(path);
    try {
        return oracle_from_bytes(bytes);
    } catch (const FormatError& e) {
        throw IoError(path + ": " + e.what());
    }
}

// Writes to --out, or stdout when it is empty or "-".
void emit(const Common& c, const std::string& text, bool binary = false) {
    if (c.out.empty() || c.out == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("write to stdout failed");
        return;
    }
    std::ofstream f(c.out, binary ? std::ios::binary : std::ios::out);
    if (!f) throw IoError("cannot create '" + c.out + "'");
    f << text;
    if (!f) throw IoError("write to '" + c.out + "' failed");
}

Vertex vertex_arg(long long one_based, std::size_t n) {
    if (one_based < 1 || static_cast<std::size_t>(one_based) > n) {
        throw UsageError("vertex " + std::to_string(one_based) + " out of range 1.." + std::to_string(n));
    }
    return static_cast<Vertex>(one_based - 1);
}

std::string fmt(double x) {
    if (x == kInfinity) return "inf";
    return format_weight(x);
}

json estimate_json(double x) {
    if (x == kInfinity) return "inf";
    return x;
}

json plan_json(const BuildPlan& p) {
    json j{{"algo", std::string(algo_tag(p.algo))}, {"k", p.k}, {"x0", p.x0}, {"seed", p.seed}, {"notes", p.notes}};
    j["k_prime"] = p.k_prime ? json(*p.k_prime) : json(nullptr);
    j["k_dprime"] = p.k_dprime ? json(*p.k_dprime) : json(nullptr);
    return j;
}

std::string plan_text(const BuildPlan& p, std::size_t n) {
    std::ostringstream os;
    os << "algo " << algo_tag(p.algo) << "\n";
    os << "k " << p.k << "\n";
    os << "x0 " << p.x0 << "\n";
    if (p.k_prime) os << "k_prime " << *p.k_prime << "\n";
    if (p.k_dprime) os << "k_dprime " << *p.k_dprime << "\n";
    os << "seed " << p.seed << "\n";
    if (n >= 2) {
        const auto hp = HadoParams::make(n, p.k, p.x0);
        os << "t " << hp.t << "\n";
        for (int i = 0; i <= hp.t; ++i) {
            os << "x_" << i << " " << hp.xs[i] << "  target |S_" << i << "| "
               << std::max(1.0, std::pow(static_cast<double>(n), 1.0 - hp.xs[i])) << "\n";
        }
        os << "x_limit " << x_limit(p.k, p.x0) << "\n";
    }
    for (const auto& note : p.notes) os << "note " << note << "\n";
    return os.str();
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::string model = "gnm";
    std::size_t n = 0;
    std::size_t m = 0;
    std::string weights = "unit";
    double max_weight = 100.0;
    std::size_t clusters = 0;
};

int run_gen(const Common& c, const GenArgs& a) {
    GenSpec spec;
    spec.model = parse_model(a.model);
    spec.n = a.n;
    spec.m = a.m;
    spec.weights = parse_weights(a.weights);
    spec.max_weight = a.max_weight;
    spec.clusters = a.clusters;
    spec.seed = c.seed;
    const Graph g = gen_graph(spec);
    std::vector<std::string> comments{"generated model=" + a.model + " n=" + std::to_string(a.n) + " weights=" + a.weights +
                                      " seed=" + std::to_string(c.seed)};
    emit(c, to_graph_text(g, comments));
    return 0;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
    std::string input;
    std::string algo;
    int k = 3;
    std::string spanner_out;
};

int run_build(const Common& c, const BuildArgs& a) {
    if (c.out.empty() || c.out == "-") throw UsageError("build needs --out <oracle file>");
    const Graph g = load_graph_file(a.input);
    json summary;
    std::string bytes;
    Stopwatch sw;
    if (a.algo == "tz") {
        Rng rng(c.seed);
        auto o = build_tz(g, a.k, rng);
        o.set_seed(c.seed);
        bytes = to_bytes(o);
        summary = {{"algo", "tz"}, {"k", a.k}, {"entries", o.space_entries()}};
    } else {
        const Algo algo = parse_algo(a.algo);
        auto plan = make_plan(algo, a.k, g.num_vertices(), g.num_edges(), c.seed);
        auto o = build_composite(g, plan, c.threads);
        bytes = to_bytes(o);
        summary = plan_json(o.plan);
        summary["entries"] = o.space_entries();
        summary["s_sizes"] = o.hado.report.s_sizes;
        summary["warnings"] = o.hado.report.warnings;
        json times = json::object();
        for (const auto& t : o.timings) times[t.phase] = t.ms;
        summary["ms"] = times;
        if (!a.spanner_out.empty()) {
            if (!o.spanner) throw UsageError(a.algo + " has no spanner component");
            std::ofstream f(a.spanner_out);
            if (!f) throw IoError("cannot create '" + a.spanner_out + "'");
            write_spanner(f, *o.spanner);
            if (!f) throw IoError("write to '" + a.spanner_out + "' failed");
        }
    }
    emit(c, bytes, true);
    summary["bytes"] = bytes.size();
    summary["ms_total"] = sw.elapsed_ms();
    if (c.format == "json") {
        std::cout << summary.dump() << "\n";
    } else {
        std::cout << "built " << summary["algo"].get<std::string>() << " k=" << a.k << " entries=" << summary["entries"]
                  << " bytes=" << bytes.size() << " -> " << c.out << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- query

struct QueryArgs {
    std::string oracle;
    long long u = 0;
    long long v = 0;
    std::string pairs;
};

int run_query(const Common& c, const QueryArgs& a) {
    const AnyOracle o = load_oracle_file(a.oracle);
    const std::size_t n = vertices_any(o);
    std::vector<std::pair<long long, long long>> pairs;
    if (!a.pairs.empty()) {
        std::istringstream in(read_file(a.pairs));
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto tok = detail::split_ws(line);
            if (tok.empty() || tok[0].front() == '#') continue;
            if (tok.size() != 2) throw IoError(a.pairs + ": line " + std::to_string(line_no) + ": expected '<u> <v>'");
            try {
                pairs.emplace_back(std::stoll(std::string(tok[0])), std::stoll(std::string(tok[1])));
            } catch (const std::exception&) {
                throw IoError(a.pairs + ": line " + std::to_string(line_no) + ": malformed vertex id");
            }
        }
    } else {
        if (a.u == 0 || a.v == 0) throw UsageError("query needs --u and --v, or --pairs");
        pairs.emplace_back(a.u, a.v);
    }
    std::ostringstream os;
    json arr = json::array();
    for (const auto& [u1, v1] : pairs) {
        const double est = query_any(o, vertex_arg(u1, n), vertex_arg(v1, n));
        if (c.format == "json") {
            arr.push_back({{"u", u1}, {"v", v1}, {"estimate", estimate_json(est)}});
        } else {
            os << u1 << " " << v1 << " " << fmt(est) << "\n";
        }
    }
    if (c.format == "json") os << arr.dump() << "\n";
    emit(c, os.str());
    return 0;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
    std::string input;
    std::string oracle;
    std::string mode = "exhaustive";
    std::size_t samples = 10000;
    std::string record;
};

int run_audit_cmd(const Common& c, const AuditArgs& a) {
    const Graph g = load_graph_file(a.input);
    const AnyOracle o = load_oracle_file(a.oracle);
    if (vertices_any(o) != g.num_vertices()) throw UsageError("oracle and graph have different vertex counts");
    AuditOptions opt;
    opt.exhaustive = a.mode == "exhaustive";
    opt.samples = a.samples;
    opt.seed = c.seed;
    opt.threads = c.threads;
    AuditReport rep;
    if (const auto* b = std::get_if<BunchOracle>(&o)) {
        rep = audit_stretch(g, *b, opt);
    } else if (const auto* co = std::get_if<CompositeOracle>(&o)) {
        rep = audit_stretch(g, *co, opt);
    } else {
        throw UsageError("audit supports classic and composite oracle files");
    }
    emit(c, c.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text());
    if (!a.record.empty()) {
        std::ofstream f(a.record);
        if (!f) throw IoError("cannot create '" + a.record + "'");
        f << rep.to_json().dump(2) << "\n";
        if (!f) throw IoError("write to '" + a.record + "' failed");
    }
    return rep.passed() ? 0 : kExitViolation;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::string input;
    std::string algo;
    int k = 3;
    int reps = 3;
};

int run_bench(const Common& c, const BenchArgs& a) {
    const Graph g = load_graph_file(a.input);
    auto plan = make_plan(parse_algo(a.algo), a.k, g.num_vertices(), g.num_edges(), c.seed);
    const auto sum = bench_build(g, plan, a.reps, c.threads);
    std::ostringstream os;
    if (c.format == "json") {
        json phases = json::array();
        for (const auto& p : sum.phases) phases.push_back({{"phase", p.phase}, {"median_ms", p.median_ms}, {"iqr_ms", p.iqr_ms}});
        os << json{{"algo", a.algo}, {"k", a.k}, {"n", g.num_vertices()}, {"m", g.num_edges()}, {"reps", sum.reps}, {"phases", phases}}.dump()
           << "\n";
    } else {
        os << "bench " << a.algo << " k=" << a.k << " n=" << g.num_vertices() << " m=" << g.num_edges() << " reps=" << sum.reps << "\n";
        for (const auto& p : sum.phases) os << p.phase << " median " << p.median_ms << " ms iqr " << p.iqr_ms << " ms\n";
    }
    emit(c, os.str());
    return 0;
}

// ---------------------------------------------------------------- info

struct InfoArgs {
    std::string input;
    std::string oracle;
    std::string algo;
    int k = 3;
    std::size_t n = 0;
    std::size_t m = 0;
};

int run_info(const Common& c, const InfoArgs& a) {
    std::ostringstream os;
    if (!a.oracle.empty()) {
        const AnyOracle o = load_oracle_file(a.oracle);
        if (const auto* co = std::get_if<CompositeOracle>(&o)) {
            if (c.format == "json") {
                auto j = plan_json(co->plan);
                j["s_sizes"] = co->hado.report.s_sizes;
                j["restricted_edges"] = co->hado.report.restricted_edges;
                j["entries"] = co->space_entries();
                os << j.dump() << "\n";
            } else {
                os << plan_text(co->plan, co->num_vertices());
                os << "ladder |S_i|";
                for (auto s : co->hado.report.s_sizes) os << " " << s;
                os << "\nentries " << co->space_entries() << "\n";
            }
        } else if (const auto* b = std::get_if<BunchOracle>(&o)) {
            os << "oracle " << to_string(b->mode()) << " k=" << b->k() << " n=" << b->num_vertices()
               << " entries=" << b->space_entries() << "\n";
        } else {
            os << "hierarchical oracle\n";
        }
        emit(c, os.str());
        return 0;
    }
    if (a.algo.empty()) throw UsageError("info needs --algo (or --oracle)");
    std::size_t n = a.n, m = a.m;
    if (!a.input.empty()) {
        const Graph g = load_graph_file(a.input);
        n = g.num_vertices();
        m = g.num_edges();
    }
    const auto plan = make_plan(parse_algo(a.algo), a.k, n, m, c.seed);
    if (c.format == "json") {
        auto j = plan_json(plan);
        if (n >= 2) j["xs"] = HadoParams::make(n, plan.k, plan.x0).xs;
        os << j.dump() << "\n";
    } else {
        os << plan_text(plan, n);
    }
    emit(c, os.str());
    return 0;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--out", c.out, "Output file (default stdout)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate distance oracles: generate graphs, build, query, audit, bench"};
    app.require_subcommand(1, 1);
    Common common;

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a connected random graph");
    add_common(gen_cmd, common);
    gen_cmd->add_option("--model", gen.model, "gnm | grid | path | star | cycle | clustered")
        ->check(CLI::IsMember({"gnm", "grid", "path", "star", "cycle", "clustered"}));
    gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
    gen_cmd->add_option("--m", gen.m, "Edge count (gnm, clustered)");
    gen_cmd->add_option("--weights", gen.weights, "unit | uniform | exp")->check(CLI::IsMember({"unit", "uniform", "exp"}));
    gen_cmd->add_option("--max-weight", gen.max_weight, "W for uniform weights in [1, W]; mean for exp");
    gen_cmd->add_option("--clusters", gen.clusters, "Cluster count for the clustered model");

    BuildArgs build;
    auto* build_cmd = app.add_subcommand("build", "Build an oracle and write it to --out");
    add_common(build_cmd, common);
    build_cmd->add_option("--input", build.input, "Graph file")->required();
    build_cmd->add_option("--algo", build.algo, "tz | w-subquadratic | w-spanner-table | w-spanner-ado | u-add2 | u-add2k2 | u-add2k1")
        ->required();
    build_cmd->add_option("--k", build.k, "Stretch parameter")->required();
    build_cmd->add_option("--spanner-out", build.spanner_out, "Also write the augmented spanner");

    QueryArgs query;
    auto* query_cmd = app.add_subcommand("query", "Estimate distances (1-based vertex ids)");
    add_common(query_cmd, common);
    query_cmd->add_option("--oracle", query.oracle, "Oracle file")->required();
    query_cmd->add_option("--u", query.u, "First vertex");
    query_cmd->add_option("--v", query.v, "Second vertex");
    query_cmd->add_option("--pairs", query.pairs, "File with one '<u> <v>' pair per line");

    AuditArgs audit;
    auto* audit_cmd = app.add_subcommand("audit", "Check an oracle against exact distances");
    add_common(audit_cmd, common);
    audit_cmd->add_option("--input", audit.input, "Graph file")->required();
    audit_cmd->add_option("--oracle", audit.oracle, "Oracle file")->required();
    audit_cmd->add_option("--mode", audit.mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    audit_cmd->add_option("--samples", audit.samples, "Pair count in sampled mode");
    audit_cmd->add_option("--record", audit.record, "Also write the JSON record file");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time repeated builds per phase");
    add_common(bench_cmd, common);
    bench_cmd->add_option("--input", bench.input, "Graph file")->required();
    bench_cmd->add_option("--algo", bench.algo, "Construction")->required();
    bench_cmd->add_option("--k", bench.k, "Stretch parameter")->required();
    bench_cmd->add_option("--reps", bench.reps, "Repetitions")->check(CLI::PositiveNumber);

    InfoArgs info;
    auto* info_cmd = app.add_subcommand("info", "Print the solved build plan");
    add_common(info_cmd, common);
    info_cmd->add_option("--algo", info.algo, "Construction");
    info_cmd->add_option("--k", info.k, "Stretch parameter");
    info_cmd->add_option("--input", info.input, "Graph file (supplies n and m)");
    info_cmd->add_option("--n", info.n, "Vertex count");
    info_cmd->add_option("--m", info.m, "Edge count");
    info_cmd->add_option("--oracle", info.oracle, "Describe a built oracle file instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen_cmd) return run_gen(common, gen);
        if (*build_cmd) return run_build(common, build);
        if (*query_cmd) return run_query(common, query);
        if (*audit_cmd) return run_audit_cmd(common, audit);
        if (*bench_cmd) return run_bench(common, bench);
        if (*info_cmd) return run_info(common, info);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
