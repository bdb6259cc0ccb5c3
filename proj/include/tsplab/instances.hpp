#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tsplab/common.hpp"
#include "tsplab/metrics.hpp"

namespace tsplab {

inline constexpr int kGkCap = 6;

/// Layout metadata of the level-k two-row grid.
///
/// City ids are row-major: bottom row 0..width-1, top row width..2*width-1.
struct GkMeta {
    int k = 0;
    std::int64_t width = 0;
    CityId s_id = 0;
    CityId r_id = 0;

    [[nodiscard]] std::size_t city_count() const noexcept { return static_cast<std::size_t>(2 * width); }
    [[nodiscard]] CityId id(std::int64_t x, std::int64_t y) const noexcept {
        return static_cast<CityId>(y * width + x);
    }
    [[nodiscard]] GridPoint point(CityId id) const noexcept {
        const auto i = static_cast<std::int64_t>(id);
        return {i % width, i / width};
    }
};

struct HubMeta {
    CityId hub_id = 0;
    std::int64_t hub_len_scaled = 0;
};

enum class Family { Gk, CwGk, OneTwo };

inline std::string family_tag(Family f) {
    switch (f) {
        case Family::Gk: return "gk";
        case Family::CwGk: return "cwgk";
        case Family::OneTwo: return "onetwo";
    }
    return "?";
}

inline Family parse_family(const std::string& tag) {
    if (tag == "gk") return Family::Gk;
    if (tag == "cwgk") return Family::CwGk;
    if (tag == "onetwo") return Family::OneTwo;
    throw Error(ErrorCode::Parse, "unknown family tag '" + tag + "'");
}

/// Ordered edge list claimed to be a prefix of a greedy (or savings) run.
struct Certificate {
    Family family = Family::Gk;
    std::int64_t param = 0;
    std::vector<Edge> edges;
    std::int64_t expected_length = 0;  // scaled
};

/// Metric used for a generated grid instance.
struct GkKind {
    enum class Type { Lp, Graphic } type = Type::Lp;
    int p = 1;

    static GkKind l1() { return {Type::Lp, 1}; }
    static GkKind l2() { return {Type::Lp, 2}; }
    static GkKind lp(int p) { return {Type::Lp, p}; }
    static GkKind graphic() { return {Type::Graphic, 0}; }

    [[nodiscard]] std::string label() const {
        return type == Type::Graphic ? std::string("graphic") : "l" + std::to_string(p);
    }
};

struct GkInstance {
    Instance instance;
    GkMeta meta;
};

struct CwInstance {
    Instance instance;
    GkMeta gk;
    HubMeta hub;
};

inline void check_level(int k, int cap = kGkCap) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "level k must be non-negative");
    if (k > cap) {
        throw Error(ErrorCode::Capacity, "level k = " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
    }
}

inline GkMeta gk_meta(int k) {
    GkMeta meta;
    meta.k = k;
    meta.width = (detail::pow3(k + 2) - 1) / 2;
    meta.s_id = meta.id((detail::pow3(k + 1) - 1) / 2, 1);
    meta.r_id = meta.id(meta.width - 1, 0);
    return meta;
}

/// Unit-distance adjacency on the level-k grid.
inline Adjacency gk_grid_adjacency(const GkMeta& meta) {
    Adjacency adj(meta.city_count());
    for (std::int64_t x = 0; x < meta.width; ++x) {
        for (std::int64_t y = 0; y < 2; ++y) {
            const CityId id = meta.id(x, y);
            if (x > 0) adj[id].push_back(meta.id(x - 1, y));
            if (x + 1 < meta.width) adj[id].push_back(meta.id(x + 1, y));
            adj[id].push_back(meta.id(x, 1 - y));
        }
    }
    return adj;
}

inline GkInstance gen_gk(int k, GkKind kind, int cap = kGkCap) {
    check_level(k, cap);
    const GkMeta meta = gk_meta(k);
    std::vector<GridPoint> coords(meta.city_count());
    for (CityId id = 0; id < coords.size(); ++id) coords[id] = meta.point(id);
    const std::string name = "G" + std::to_string(k) + "_" + kind.label();
    if (kind.type == GkKind::Type::Graphic) {
        return {Instance::graphic(name, gk_grid_adjacency(meta), std::move(coords)), meta};
    }
    return {Instance::lp(name, std::move(coords), kind.p), meta};
}

namespace detail {

struct GridEdge {
    GridPoint a;
    GridPoint b;
    std::int64_t length = 0;
};

/// Partial greedy path of level k in local columns [0, width), s_k to r_k.
inline std::vector<GridEdge> gk_local_path(int k) {
    if (k == 0) {
        // s_0 = (1,1) -> (0,1) -> (0,0) -> (1,0) -> (2,0) -> (2,1) -> (3,1) -> (3,0) = r_0
        const GridPoint path[] = {{1, 1}, {0, 1}, {0, 0}, {1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 0}};
        std::vector<GridEdge> out;
        for (std::size_t i = 0; i + 1 < std::size(path); ++i) out.push_back({path[i], path[i + 1], 1});
        return out;
    }
    const std::vector<GridEdge> sub = gk_local_path(k - 1);
    const std::int64_t w = (pow3(k + 1) - 1) / 2;  // width of each copy
    const std::int64_t s_col = (pow3(k) - 1) / 2;  // s_{k-1} column inside a copy
    const std::int64_t long_len = pow3(k);

    struct Placement {
        std::int64_t offset;
        bool mirrored;
    };
    // copy 1 | separator column w | copy 2 (mirrored) | copy 3
    const Placement placements[] = {{0, false}, {w + 1, true}, {2 * w + 1, false}};
    auto place = [&](const GridPoint& p, const Placement& pl) {
        return GridPoint{pl.mirrored ? pl.offset + (w - 1 - p.x) : pl.offset + p.x, p.y};
    };

    std::vector<GridEdge> out;
    out.push_back({{w - 1, 0}, {w, 0}, 1});
    out.push_back({{w, 0}, {w + 1, 0}, 1});

    std::vector<GridEdge> merged;
    merged.reserve(3 * sub.size());
    for (const auto& pl : placements) {
        for (const auto& e : sub) merged.push_back({place(e.a, pl), place(e.b, pl), e.length});
    }
    // ties keep (copy index, order within copy)
    std::stable_sort(merged.begin(), merged.end(),
                     [](const GridEdge& a, const GridEdge& b) { return a.length < b.length; });
    out.insert(out.end(), merged.begin(), merged.end());

    const GridPoint s1 = place({s_col, 1}, placements[0]);
    const GridPoint s2 = place({s_col, 1}, placements[1]);
    const GridPoint s3 = place({s_col, 1}, placements[2]);
    out.push_back({s1, {w, 1}, long_len});
    out.push_back({s2, s3, long_len});
    return out;
}

}  // namespace detail

/// Recursive partial greedy tour on the level-k grid, in a valid greedy order.
inline Certificate gk_certificate(int k, int cap = kGkCap) {
    check_level(k, cap);
    const GkMeta meta = gk_meta(k);
    Certificate cert;
    cert.family = Family::Gk;
    cert.param = k;
    cert.expected_length = (2 * k + 8) * detail::pow3(k) - 1;
    for (const auto& e : detail::gk_local_path(k)) {
        cert.edges.push_back({meta.id(e.a.x, e.a.y), meta.id(e.b.x, e.b.y)});
    }
    return cert;
}

/// Graphic level-k grid plus a hub city at half-integer distance 3^{k+2}/2 from
/// everything. Stored as an explicit matrix at scale 2; the hub is the last city.
inline CwInstance gen_cw_instance(int k, int cap = kGkCap) {
    check_level(k, cap);
    const GkMeta meta = gk_meta(k);
    const DistanceMatrix hops = graphic_all_pairs(gk_grid_adjacency(meta));
    const std::size_t grid_n = meta.city_count();
    const std::size_t n = grid_n + 1;
    const std::int64_t hub_len = detail::pow3(k + 2);

    DistanceMatrix m(n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        for (std::size_t j = i + 1; j < grid_n; ++j) m.set_symmetric(i, j, 2 * hops(i, j));
        m.set_symmetric(i, grid_n, hub_len);
    }
    return {Instance::explicit_matrix("CW" + std::to_string(k), std::move(m), 2), meta,
            HubMeta{static_cast<CityId>(grid_n), hub_len}};
}

/// The grid certificate's pairs, read as shortcuts on the hub instance.
inline Certificate cw_certificate(int k, int cap = kGkCap) {
    Certificate cert = gk_certificate(k, cap);
    cert.family = Family::CwGk;
    cert.expected_length = 2 * cert.expected_length;
    return cert;
}

inline void check_one_two_size(std::int64_t n) {
    if (n < 5 || n % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "1-2 instance size must be odd and at least 5, got " +
                                                    std::to_string(n));
    }
}

/// 1-2 instance on an odd number of cities: a Hamiltonian cycle plus chords
/// between odd cities two apart have length 1, everything else has length 2.
///
/// Cities are named 1..n in the construction; id = name - 1.
inline Instance gen_one_two(std::int64_t n) {
    check_one_two_size(n);
    const auto count = static_cast<std::size_t>(n);
    DistanceMatrix m(count, 2);
    for (std::size_t i = 0; i < count; ++i) m(i, i) = 0;
    for (std::size_t i = 0; i + 1 < count; ++i) m.set_symmetric(i, i + 1, 1);
    m.set_symmetric(0, count - 1, 1);
    // names i and i+2 both odd <=> ids even
    for (std::size_t i = 0; i + 2 < count; i += 2) m.set_symmetric(i, i + 2, 1);
    return Instance::explicit_matrix("onetwo" + std::to_string(n), std::move(m));
}

/// Names {2,3}, {1,n}, {3,5}, {5,7}, ..., {n-2,n}, as 0-indexed ids.
inline Certificate one_two_certificate(std::int64_t n) {
    check_one_two_size(n);
    const auto count = static_cast<CityId>(n);
    Certificate cert;
    cert.family = Family::OneTwo;
    cert.param = n;
    cert.expected_length = (n + 1) / 2;
    cert.edges.push_back({1, 2});
    cert.edges.push_back({0, count - 1});
    for (CityId name = 3; name + 2 <= count; name += 2) cert.edges.push_back({name - 1, name + 1});
    return cert;
}

}  // namespace tsplab
