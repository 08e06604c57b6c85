// serialize.hpp - versioned little-endian binary format for every oracle type.
//
// File = magic "ADOx" | version | kind | payload. Hash-map contents are written sorted
// by vertex id so equal oracles produce equal bytes.

#ifndef ADO_SERIALIZE_HPP
#define ADO_SERIALIZE_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ado/constructions.hpp"

namespace ado {

inline constexpr std::array<char, 4> kMagic{'A', 'D', 'O', 'x'};
inline constexpr std::uint8_t kFormatVersion = 1;

inline constexpr std::size_t kMaxStoredVertices = std::size_t{1} << 28;

enum class BlobKind : std::uint8_t { bunch = 1, hado = 2, composite = 3 };

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

class Writer {
public:
    void u8(std::uint8_t x) { buf_.push_back(static_cast<char>(x)); }
    void u32(std::uint32_t x) {
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(x >> (8 * i)));
    }
    void u64(std::uint64_t x) {
        for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(x >> (8 * i)));
    }
    void i32(std::int32_t x) { u32(static_cast<std::uint32_t>(x)); }
    void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }
    void str(const std::string& s) {
        u64(s.size());
        buf_.append(s);
    }
    void ids(const std::vector<Vertex>& v) {
        u64(v.size());
        for (Vertex x : v) u32(x);
    }
    void reals(const std::vector<double>& v) {
        u64(v.size());
        for (double x : v) f64(x);
    }
    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint32_t u32() {
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(u8()) << (8 * i);
        return x;
    }
    std::uint64_t u64() {
        std::uint64_t x = 0;
        for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(u8()) << (8 * i);
        return x;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }
    std::size_t count(std::size_t elem_bytes) {
        const auto c = u64();
        if (elem_bytes != 0 && c > (data_.size() - pos_) / elem_bytes) throw FormatError("oracle file: length field too large");
        return static_cast<std::size_t>(c);
    }
    std::string str() {
        const auto len = count(1);
        need(len);
        std::string s(data_.substr(pos_, len));
        pos_ += len;
        return s;
    }
    std::vector<Vertex> ids() {
        std::vector<Vertex> v(count(4));
        for (auto& x : v) x = u32();
        return v;
    }
    std::vector<double> reals() {
        std::vector<double> v(count(8));
        for (auto& x : v) x = f64();
        return v;
    }
    bool done() const { return pos_ == data_.size(); }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t k) const {
        if (data_.size() - pos_ < k) throw FormatError("oracle file: truncated");
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

inline void put_bunch(Writer& w, const BunchOracle& o) {
    const auto& d = o.data();
    w.u8(static_cast<std::uint8_t>(d.mode));
    w.u32(static_cast<std::uint32_t>(d.k));
    w.u64(d.n);
    w.u64(d.seed);
    w.u32(static_cast<std::uint32_t>(d.levels.count()));
    for (std::size_t i = 1; i < d.levels.count(); ++i) w.ids(d.levels.sets[i]);
    const std::size_t L = d.levels.count();
    for (std::size_t o_i = 0; o_i < d.owners.size(); ++o_i) {
        for (std::size_t i = 0; i < L; ++i) {
            const auto& p = d.pivots[o_i * L + i];
            w.u32(p.vertex);
            w.f64(p.dist);
        }
        std::vector<std::pair<Vertex, Weight>> entries(d.bunches[o_i].begin(), d.bunches[o_i].end());
        std::sort(entries.begin(), entries.end());
        w.u64(entries.size());
        for (const auto& [v, dist] : entries) {
            w.u32(v);
            w.f64(dist);
        }
    }
}

inline BunchOracle get_bunch(Reader& r) {
    BunchOracle::Data d;
    const auto mode = r.u8();
    if (mode > 2) throw FormatError("oracle file: bad oracle mode");
    d.mode = static_cast<OracleMode>(mode);
    d.k = static_cast<int>(r.u32());
    d.n = r.u64();
    if (d.n > kMaxStoredVertices) throw FormatError("oracle file: vertex count too large");
    d.seed = r.u64();
    const auto L = r.u32();
    if (L == 0 || L > 255) throw FormatError("oracle file: bad level count");
    // Every owner carries L pivots and a bunch length; full-table modes own all n vertices.
    if (d.mode != OracleMode::restricted && d.n > r.remaining() / (12 * L + 8)) {
        throw FormatError("oracle file: truncated");
    }
    std::vector<std::vector<Vertex>> sets{all_vertices(d.n)};
    for (std::uint32_t i = 1; i < L; ++i) sets.push_back(r.ids());
    try {
        d.levels = Levels::from_sets(d.n, std::move(sets));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("oracle file: ") + e.what());
    }
    if (d.mode != OracleMode::classic && L < 2) throw FormatError("oracle file: parameterized oracle without S");
    if (d.mode == OracleMode::restricted) {
        d.owners = d.levels.sets[1];
    } else {
        d.owners = all_vertices(d.n);
    }
    d.pivots.resize(d.owners.size() * L);
    d.bunches.resize(d.owners.size());
    for (std::size_t o_i = 0; o_i < d.owners.size(); ++o_i) {
        for (std::size_t i = 0; i < L; ++i) {
            auto& p = d.pivots[o_i * L + i];
            p.vertex = r.u32();
            p.dist = r.f64();
            if (p.vertex != kNoVertex && p.vertex >= d.n) throw FormatError("oracle file: pivot out of range");
        }
        const auto count = r.count(12);
        auto& b = d.bunches[o_i];
        b.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            const Vertex v = r.u32();
            const double dist = r.f64();
            if (v >= d.n) throw FormatError("oracle file: bunch vertex out of range");
            b.emplace(v, dist);
        }
    }
    return BunchOracle(std::move(d));
}

inline void put_hado(Writer& w, const Hado& h) {
    w.u32(static_cast<std::uint32_t>(h.params.k));
    w.f64(h.params.x0);
    w.u32(static_cast<std::uint32_t>(h.params.t));
    w.reals(h.params.xs);
    w.u64(h.s_sets.size());
    for (const auto& s : h.s_sets) w.ids(s);
    put_bunch(w, h.base);
    w.u64(h.levels.size());
    for (const auto& lv : h.levels) put_bunch(w, lv.core());
    w.reals(h.nearest_t.h);
    w.ids(h.nearest_t.p);
    w.u64(h.report.warnings.size());
    for (const auto& s : h.report.warnings) w.str(s);
    w.u64(h.report.s_sizes.size());
    for (auto x : h.report.s_sizes) w.u64(x);
    w.u64(h.report.restricted_edges.size());
    for (auto x : h.report.restricted_edges) w.u64(x);
}

inline Hado get_hado(Reader& r) {
    Hado h;
    h.params.k = static_cast<int>(r.u32());
    h.params.x0 = r.f64();
    h.params.t = static_cast<int>(r.u32());
    h.params.xs = r.reals();
    const auto ns = r.count(8);
    for (std::size_t i = 0; i < ns; ++i) h.s_sets.push_back(r.ids());
    if (h.s_sets.empty()) throw FormatError("oracle file: empty ladder");
    h.base = get_bunch(r);
    const auto nl = r.count(1);
    for (std::size_t i = 0; i < nl; ++i) {
        auto core = get_bunch(r);
        if (core.mode() != OracleMode::parameterized) throw FormatError("oracle file: ladder level has wrong mode");
        h.levels.emplace_back(std::move(core));
    }
    const std::size_t n = h.base.num_vertices();
    h.nearest_t.h = r.reals();
    h.nearest_t.p = r.ids();
    if (h.nearest_t.h.size() != n || h.nearest_t.p.size() != n) throw FormatError("oracle file: nearest table size mismatch");
    for (Vertex p : h.nearest_t.p) {
        if (p != kNoVertex && p >= n) throw FormatError("oracle file: pivot out of range");
    }
    h.nearest_t.in_set.assign(n, 0);
    for (Vertex s : h.s_sets.back()) {
        if (s >= n) throw FormatError("oracle file: S_t member out of range");
        h.nearest_t.in_set[s] = 1;
    }
    const auto nw = r.count(8);
    for (std::size_t i = 0; i < nw; ++i) h.report.warnings.push_back(r.str());
    const auto nsz = r.count(8);
    for (std::size_t i = 0; i < nsz; ++i) h.report.s_sizes.push_back(r.u64());
    const auto ne = r.count(8);
    for (std::size_t i = 0; i < ne; ++i) h.report.restricted_edges.push_back(r.u64());
    return h;
}

inline void put_summary(Writer& w, const SpannerSummary& s) {
    w.u32(static_cast<std::uint32_t>(s.k_spanner));
    w.u32(static_cast<std::uint32_t>(s.additive));
    w.u64(s.edges);
    w.u64(s.augmented);
    w.u32(static_cast<std::uint32_t>(s.attempts));
    w.u8(s.over_budget ? 1 : 0);
}

inline SpannerSummary get_summary(Reader& r) {
    SpannerSummary s;
    s.k_spanner = static_cast<int>(r.u32());
    s.additive = static_cast<int>(r.u32());
    s.edges = r.u64();
    s.augmented = r.u64();
    s.attempts = static_cast<int>(r.u32());
    s.over_budget = r.u8() != 0;
    return s;
}

inline void put_composite(Writer& w, const CompositeOracle& o) {
    const auto& p = o.plan;
    w.u8(static_cast<std::uint8_t>(p.algo));
    w.u32(static_cast<std::uint32_t>(p.k));
    w.f64(p.x0);
    w.i32(p.k_prime.value_or(-1));
    w.i32(p.k_dprime.value_or(-1));
    w.u64(p.seed);
    w.u64(p.notes.size());
    for (const auto& s : p.notes) w.str(s);
    w.f64(o.guarantee.alpha);
    w.f64(o.guarantee.beta);
    put_hado(w, o.hado);
    w.u8(static_cast<std::uint8_t>(o.far.index()));
    if (const auto* a = std::get_if<ParamOracle>(&o.far)) {
        put_bunch(w, a->core());
    } else if (const auto* t = std::get_if<TableFar>(&o.far)) {
        w.ids(t->table.members);
        w.reals(t->table.dist);
        put_summary(w, t->spanner);
    } else {
        const auto& f = std::get<SpannerAdoFar>(o.far);
        put_bunch(w, f.oracle.core());
        put_summary(w, f.spanner);
    }
}

inline CompositeOracle get_composite(Reader& r) {
    CompositeOracle o;
    auto& p = o.plan;
    const auto algo = r.u8();
    if (algo > static_cast<std::uint8_t>(Algo::u_add2k1)) throw FormatError("oracle file: unknown algorithm");
    p.algo = static_cast<Algo>(algo);
    p.k = static_cast<int>(r.u32());
    p.x0 = r.f64();
    if (auto kp = r.i32(); kp >= 0) p.k_prime = kp;
    if (auto kdp = r.i32(); kdp >= 0) p.k_dprime = kdp;
    p.seed = r.u64();
    const auto nn = r.count(8);
    for (std::size_t i = 0; i < nn; ++i) p.notes.push_back(r.str());
    o.guarantee.alpha = r.f64();
    o.guarantee.beta = r.f64();
    o.hado = get_hado(r);
    switch (r.u8()) {
        case 0: {
            auto core = get_bunch(r);
            if (core.mode() != OracleMode::parameterized) throw FormatError("oracle file: far component has wrong mode");
            o.far = ParamOracle(std::move(core));
            break;
        }
        case 1: {
            TableFar t;
            t.table.members = r.ids();
            t.table.dist = r.reals();
            if (t.table.dist.size() != t.table.members.size() * t.table.members.size()) {
                throw FormatError("oracle file: table size mismatch");
            }
            t.spanner = get_summary(r);
            o.far = std::move(t);
            break;
        }
        case 2: {
            auto core = get_bunch(r);
            if (core.mode() != OracleMode::restricted) throw FormatError("oracle file: far component has wrong mode");
            SpannerAdoFar f{RestrictedParamOracle(std::move(core)), get_summary(r)};
            o.far = std::move(f);
            break;
        }
        default: throw FormatError("oracle file: unknown far component");
    }
    return o;
}

inline void put_header(Writer& w, BlobKind kind) {
    for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
    w.u8(kFormatVersion);
    w.u8(static_cast<std::uint8_t>(kind));
}

inline BlobKind get_header(Reader& r) {
    for (char c : kMagic) {
        if (r.u8() != static_cast<std::uint8_t>(c)) throw FormatError("not an oracle file (bad magic)");
    }
    if (auto v = r.u8(); v != kFormatVersion) throw FormatError("unsupported oracle format version " + std::to_string(v));
    const auto kind = r.u8();
    if (kind < 1 || kind > 3) throw FormatError("oracle file: unknown blob kind");
    return static_cast<BlobKind>(kind);
}

}  // namespace detail

inline std::string to_bytes(const BunchOracle& o) {
    detail::Writer w;
    detail::put_header(w, BlobKind::bunch);
    detail::put_bunch(w, o);
    return w.bytes();
}

inline std::string to_bytes(const ParamOracle& o) { return to_bytes(o.core()); }
inline std::string to_bytes(const RestrictedParamOracle& o) { return to_bytes(o.core()); }

inline std::string to_bytes(const Hado& h) {
    detail::Writer w;
    detail::put_header(w, BlobKind::hado);
    detail::put_hado(w, h);
    return w.bytes();
}

inline std::string to_bytes(const CompositeOracle& o) {
    detail::Writer w;
    detail::put_header(w, BlobKind::composite);
    detail::put_composite(w, o);
    return w.bytes();
}

using AnyOracle = std::variant<BunchOracle, Hado, CompositeOracle>;

inline AnyOracle oracle_from_bytes(std::string_view bytes) {
    detail::Reader r(bytes);
    AnyOracle out;
    switch (detail::get_header(r)) {
        case BlobKind::bunch: out = detail::get_bunch(r); break;
        case BlobKind::hado: out = detail::get_hado(r); break;
        case BlobKind::composite: out = detail::get_composite(r); break;
    }
    if (!r.done()) throw FormatError("oracle file: trailing bytes");
    return out;
}

template <typename T>
T from_bytes(std::string_view bytes) {
    auto any = oracle_from_bytes(bytes);
    if (auto* p = std::get_if<T>(&any)) return std::move(*p);
    throw FormatError("oracle file holds a different oracle type");
}

template <>
inline ParamOracle from_bytes<ParamOracle>(std::string_view bytes) {
    return ParamOracle(from_bytes<BunchOracle>(bytes));
}

template <>
inline RestrictedParamOracle from_bytes<RestrictedParamOracle>(std::string_view bytes) {
    return RestrictedParamOracle(from_bytes<BunchOracle>(bytes));
}

inline void save_oracle(std::ostream& os, const AnyOracle& o) {
    std::visit([&](const auto& x) { os << to_bytes(x); }, o);
    if (!os) throw std::runtime_error("failed to write oracle");
}

inline AnyOracle load_oracle(std::istream& is) {
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return oracle_from_bytes(bytes);
}

// Query through whichever oracle type the variant holds.
inline Weight query_any(const AnyOracle& o, Vertex u, Vertex v) {
    return std::visit([&](const auto& x) -> Weight { return x.query(u, v); }, o);
}

inline std::size_t vertices_any(const AnyOracle& o) {
    return std::visit([](const auto& x) { return x.num_vertices(); }, o);
}

}  // namespace ado

#endif  // ADO_SERIALIZE_HPP
