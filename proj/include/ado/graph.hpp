// graph.hpp - immutable undirected weighted graph and the line-oriented graph file format.
//
// Vertices are dense 0-based ids. Edges are stored once in canonical (u < v) order and
// mirrored into a CSR adjacency so both endpoints see the same weight.

#ifndef ADO_GRAPH_HPP
#define ADO_GRAPH_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ado {

using Vertex = std::uint32_t;
using Weight = double;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
    Vertex u;
    Vertex v;
    Weight w;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// One direction of an undirected edge as seen from its tail.
struct Arc {
    Vertex to;
    Weight w;
};

class GraphFormatError : public std::runtime_error {
public:
    GraphFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class Graph {
public:
    Graph() = default;

    // Normalizes the edge list: self-loops are dropped and parallel edges collapse to
    // their minimum weight. Throws std::invalid_argument on bad ids or weights.
    Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
        if (n > static_cast<std::size_t>(kNoVertex)) throw std::invalid_argument("graph too large");
        for (auto& e : edges) {
            if (e.u >= n || e.v >= n) {
                throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) +
                                            ", " + std::to_string(e.v) + ") with n=" +
                                            std::to_string(n));
            }
            if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
                throw std::invalid_argument("edge weight must be finite and non-negative");
            }
            if (e.u > e.v) std::swap(e.u, e.v);
        }
        std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            if (a.u != b.u) return a.u < b.u;
            if (a.v != b.v) return a.v < b.v;
            return a.w < b.w;
        });
        edges.erase(std::unique(edges.begin(), edges.end(),
                                [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                    edges.end());
        edges_ = std::move(edges);

        unweighted_ = std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1.0; });

        offsets_.assign(n_ + 1, 0);
        for (const auto& e : edges_) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
        arcs_.resize(offsets_[n_]);
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        // Edges are sorted by (u, v), so each adjacency list comes out sorted by target.
        for (const auto& e : edges_) arcs_[fill[e.v]++] = Arc{e.u, e.w};
        for (const auto& e : edges_) arcs_[fill[e.u]++] = Arc{e.v, e.w};
        for (std::size_t x = 0; x < n_; ++x) {
            std::sort(arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[x]),
                      arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[x + 1]),
                      [](const Arc& a, const Arc& b) { return a.to < b.to; });
        }
    }

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    // Canonical edge list, u < v, sorted by (u, v).
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Arc> neighbors(Vertex u) const {
        return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
    }

    std::size_t degree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }

    // True when every edge has weight exactly 1 (vacuously true without edges).
    bool is_unweighted() const noexcept { return unweighted_; }

    // Weight of the edge (u, v), or kInfinity if absent.
    Weight edge_weight(Vertex u, Vertex v) const {
        auto nb = neighbors(u);
        auto it = std::lower_bound(nb.begin(), nb.end(), v,
                                   [](const Arc& a, Vertex x) { return a.to < x; });
        return (it != nb.end() && it->to == v) ? it->w : kInfinity;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Arc> arcs_;
    bool unweighted_ = true;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw GraphFormatError(line, std::string("malformed ") + what + " '" + std::string(tok) + "'");
    }
    return value;
}

inline double parse_weight(std::string_view tok, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
        throw GraphFormatError(line, "malformed weight '" + std::string(tok) + "'");
    }
    if (value < 0.0) throw GraphFormatError(line, "negative weight '" + std::string(tok) + "'");
    return value;
}

}  // namespace detail

// Parses the DIMACS-like text format:
//   c <comment>
//   p sp <n> <m>
//   e <u> <v> [w]        (1-based ids, w defaults to 1)
// The declared m is informational; the edge count after normalization may differ.
inline Graph parse_graph(std::string_view text) {
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto tok = detail::split_ws(line);
        if (tok.empty() || tok[0].front() == 'c') continue;
        if (tok[0] == "p") {
            if (have_header) throw GraphFormatError(line_no, "duplicate header");
            if (tok.size() != 4 || tok[1] != "sp") throw GraphFormatError(line_no, "expected 'p sp <n> <m>'");
            n = detail::parse_uint(tok[2], line_no, "vertex count");
            auto declared_m = detail::parse_uint(tok[3], line_no, "edge count");
            have_header = true;
            edges.reserve(std::min<std::uint64_t>(declared_m, 1u << 24));
        } else if (tok[0] == "e") {
            if (!have_header) throw GraphFormatError(line_no, "edge before header");
            if (tok.size() != 3 && tok.size() != 4) throw GraphFormatError(line_no, "expected 'e <u> <v> [w]'");
            auto u = detail::parse_uint(tok[1], line_no, "vertex id");
            auto v = detail::parse_uint(tok[2], line_no, "vertex id");
            if (u < 1 || v < 1 || u > n || v > n) {
                throw GraphFormatError(line_no, "vertex id out of range 1.." + std::to_string(n));
            }
            Weight w = tok.size() == 4 ? detail::parse_weight(tok[3], line_no) : 1.0;
            edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
        } else {
            throw GraphFormatError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw GraphFormatError(line_no, "missing 'p sp' header");
    return Graph(n, std::move(edges));
}

// Shortest round-trippable decimal for a weight.
inline std::string format_weight(Weight w) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, ptr);
}

inline void write_graph(std::ostream& os, const Graph& g, std::span<const std::string> comments = {}) {
    for (const auto& c : comments) os << "c " << c << '\n';
    os << "p sp " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) {
        os << "e " << (e.u + 1) << ' ' << (e.v + 1) << ' ' << format_weight(e.w) << '\n';
    }
}

inline std::string to_graph_text(const Graph& g, std::span<const std::string> comments = {}) {
    std::ostringstream os;
    write_graph(os, g, comments);
    return os.str();
}

}  // namespace ado

#endif  // ADO_GRAPH_HPP
