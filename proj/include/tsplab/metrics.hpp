#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsplab/common.hpp"

namespace tsplab {

/// Cell of a two-row integer grid. Columns are 0-indexed.
struct GridPoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Exact comparison key for an edge length inside one instance.
///
/// For L1, graphic and explicit metrics this is the scaled length itself. For
/// Lp with p >= 2 it is the p-th power of the scaled length, so ordering by key
/// is ordering by length without ever taking a root.
struct DistKey {
    std::int64_t value = 0;

    friend constexpr auto operator<=>(const DistKey&, const DistKey&) = default;
};

/// Dense symmetric integer matrix, row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n, std::int64_t fill = 0) : n_(n), data_(n * n, fill) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    void set_symmetric(std::size_t i, std::size_t j, std::int64_t value) {
        (*this)(i, j) = value;
        (*this)(j, i) = value;
    }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> data_;
};

using Adjacency = std::vector<std::vector<CityId>>;

struct LpNorm {
    int p = 2;
};

struct GraphicMetric {
    Adjacency adjacency;
};

struct ExplicitMetric {
    DistanceMatrix matrix;
};

struct Metric {
    std::variant<LpNorm, GraphicMetric, ExplicitMetric> kind;
    std::int64_t scale = 1;
};

/// A length as reported to users: exact scaled integer where representable.
struct Length {
    std::int64_t scaled = 0;
    double approx_scaled = 0.0;
    std::int64_t scale = 1;
    bool exact = true;

    [[nodiscard]] double value() const noexcept { return approx_scaled / static_cast<double>(scale); }

    Length& operator+=(const Length& other) {
        exact = exact && other.exact;
        scaled = exact ? detail::checked_add(scaled, other.scaled) : 0;
        approx_scaled += other.approx_scaled;
        return *this;
    }
};

inline constexpr std::size_t kGraphicCap = 10'000;
inline constexpr std::size_t kValidateCap = 2'000;

namespace detail {

/// BFS hop distances from every source; -1 marks unreachable pairs.
inline DistanceMatrix hop_distances(const Adjacency& adjacency) {
    const std::size_t n = adjacency.size();
    DistanceMatrix dist(n, -1);
    std::vector<CityId> queue(n);
    for (CityId src = 0; src < n; ++src) {
        std::size_t head = 0;
        std::size_t tail = 0;
        dist(src, src) = 0;
        queue[tail++] = src;
        while (head < tail) {
            const CityId cur = queue[head++];
            const std::int64_t next = dist(src, cur) + 1;
            for (CityId nb : adjacency[cur]) {
                if (dist(src, nb) < 0) {
                    dist(src, nb) = next;
                    queue[tail++] = nb;
                }
            }
        }
    }
    return dist;
}

inline void check_adjacency(const Adjacency& adjacency) {
    const std::size_t n = adjacency.size();
    for (CityId u = 0; u < n; ++u) {
        for (CityId v : adjacency[u]) {
            if (v >= n) throw Error(ErrorCode::OutOfRange, "adjacency references city " + std::to_string(v));
            if (std::find(adjacency[v].begin(), adjacency[v].end(), u) == adjacency[v].end()) {
                throw Error(ErrorCode::InvalidArgument, "adjacency is not symmetric at (" + std::to_string(u) +
                                                            ", " + std::to_string(v) + ")");
            }
        }
    }
}

}  // namespace detail

/// All-pairs hop distances of an unweighted connected graph.
inline DistanceMatrix graphic_all_pairs(const Adjacency& adjacency, std::size_t cap = kGraphicCap) {
    if (adjacency.size() > cap) {
        throw Error(ErrorCode::Capacity, "graph has " + std::to_string(adjacency.size()) +
                                             " vertices, cap is " + std::to_string(cap));
    }
    detail::check_adjacency(adjacency);
    DistanceMatrix dist = detail::hop_distances(adjacency);
    for (std::size_t u = 0; u < dist.size(); ++u) {
        for (std::size_t v = 0; v < dist.size(); ++v) {
            if (dist(u, v) < 0) {
                throw Error(ErrorCode::Disconnected, "graph is disconnected: no path between " + std::to_string(u) +
                                                         " and " + std::to_string(v));
            }
        }
    }
    return dist;
}

/// A TSP instance: n cities, a metric, optional grid coordinates.
///
/// Immutable after construction. Graphic hop distances are computed on first
/// use under std::call_once, so concurrent readers are safe.
class Instance {
public:
    static Instance lp(std::string name, std::vector<GridPoint> coords, int p, std::int64_t scale = 1) {
        if (p < 1) throw Error(ErrorCode::InvalidArgument, "Lp metric requires a positive integer p");
        if (scale < 1) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
        Instance inst(std::move(name), coords.size(), Metric{LpNorm{p}, scale});
        inst.coords_ = std::move(coords);
        inst.check_coords_distinct();
        inst.check_lp_range();
        return inst;
    }

    static Instance graphic(std::string name, Adjacency adjacency, std::vector<GridPoint> coords = {}) {
        detail::check_adjacency(adjacency);
        const std::size_t n = adjacency.size();
        if (n > kGraphicCap) {
            throw Error(ErrorCode::Capacity, "graphic instance exceeds " + std::to_string(kGraphicCap) + " cities");
        }
        Instance inst(std::move(name), n, Metric{GraphicMetric{std::move(adjacency)}, 1});
        inst.set_coords(std::move(coords));
        return inst;
    }

    static Instance explicit_matrix(std::string name, DistanceMatrix matrix, std::int64_t scale = 1,
                                    std::vector<GridPoint> coords = {}) {
        if (scale < 1) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
        const std::size_t n = matrix.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix(i, i) != 0) throw Error(ErrorCode::InvalidArgument, "matrix diagonal must be zero");
            for (std::size_t j = i + 1; j < n; ++j) {
                if (matrix(i, j) != matrix(j, i)) {
                    throw Error(ErrorCode::InvalidArgument, "matrix is not symmetric at (" + std::to_string(i) +
                                                                ", " + std::to_string(j) + ")");
                }
                if (matrix(i, j) < 0) throw Error(ErrorCode::InvalidArgument, "negative matrix entry");
            }
        }
        Instance inst(std::move(name), n, Metric{ExplicitMetric{std::move(matrix)}, scale});
        inst.set_coords(std::move(coords));
        return inst;
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const Metric& metric() const noexcept { return metric_; }
    [[nodiscard]] std::int64_t scale() const noexcept { return metric_.scale; }
    [[nodiscard]] bool has_coords() const noexcept { return !coords_.empty(); }
    [[nodiscard]] const std::vector<GridPoint>& coords() const noexcept { return coords_; }

    [[nodiscard]] std::optional<int> lp_exponent() const {
        if (const auto* lp = std::get_if<LpNorm>(&metric_.kind)) return lp->p;
        return std::nullopt;
    }

    /// True when every scaled length is an integer by construction.
    [[nodiscard]] bool exact_lengths() const {
        const auto p = lp_exponent();
        return !p || *p == 1;
    }

    [[nodiscard]] DistKey key(CityId u, CityId v) const {
        check_ids(u, v);
        if (u == v) return {};
        return std::visit([&](const auto& kind) { return key_impl(kind, u, v); }, metric_.kind);
    }

    [[nodiscard]] Length length(CityId u, CityId v) const {
        const DistKey k = key(u, v);
        Length out;
        out.scale = metric_.scale;
        const int p = lp_exponent().value_or(1);
        std::int64_t root = 0;
        if (detail::exact_root(k.value, p, root)) {
            out.scaled = root;
            out.approx_scaled = static_cast<double>(root);
        } else {
            out.exact = false;
            out.approx_scaled = std::pow(static_cast<double>(k.value), 1.0 / p);
        }
        return out;
    }

    /// Scaled integer length; throws when the metric is not exact by kind.
    [[nodiscard]] std::int64_t scaled_length(CityId u, CityId v) const {
        if (!exact_lengths()) {
            throw Error(ErrorCode::InexactLengths, "operation requires exact lengths (L1, graphic or explicit metric)");
        }
        return key(u, v).value;
    }

    /// Key of a scaled length value under this instance's metric.
    [[nodiscard]] DistKey key_of_scaled_length(std::int64_t scaled) const {
        return {detail::ipow(scaled, lp_exponent().value_or(1))};
    }

    /// Explicit matrix of scaled lengths for exact kinds.
    [[nodiscard]] DistanceMatrix scaled_matrix() const {
        DistanceMatrix m(n_);
        for (CityId i = 0; i < n_; ++i) {
            for (CityId j = i + 1; j < n_; ++j) {
                const Length len = length(i, j);
                if (!len.exact) {
                    throw Error(ErrorCode::InexactLengths, "length between " + std::to_string(i) + " and " +
                                                               std::to_string(j) + " is not an integer");
                }
                m.set_symmetric(i, j, len.scaled);
            }
        }
        return m;
    }

private:
    struct HopCache {
        std::once_flag once;
        DistanceMatrix hops;
    };

    Instance(std::string name, std::size_t n, Metric metric)
        : name_(std::move(name)), n_(n), metric_(std::move(metric)), hop_cache_(std::make_shared<HopCache>()) {}

    void set_coords(std::vector<GridPoint> coords) {
        if (!coords.empty() && coords.size() != n_) {
            throw Error(ErrorCode::InvalidArgument, "coordinate count does not match city count");
        }
        coords_ = std::move(coords);
        check_coords_distinct();
    }

    void check_coords_distinct() const {
        std::vector<std::pair<std::int64_t, std::int64_t>> sorted;
        sorted.reserve(coords_.size());
        for (const auto& c : coords_) sorted.emplace_back(c.x, c.y);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error(ErrorCode::InvalidArgument, "duplicate city coordinates");
        }
    }

    void check_lp_range() const {
        if (coords_.empty()) return;
        std::int64_t min_x = coords_[0].x, max_x = min_x, min_y = coords_[0].y, max_y = min_y;
        for (const auto& c : coords_) {
            min_x = std::min(min_x, c.x);
            max_x = std::max(max_x, c.x);
            min_y = std::min(min_y, c.y);
            max_y = std::max(max_y, c.y);
        }
        const int p = lp_exponent().value_or(1);
        const std::int64_t dx = detail::checked_mul(max_x - min_x, metric_.scale);
        const std::int64_t dy = detail::checked_mul(max_y - min_y, metric_.scale);
        // throws on overflow of the largest possible key
        (void)detail::checked_add(detail::ipow(dx, p), detail::ipow(dy, p));
    }

    void check_ids(CityId u, CityId v) const {
        if (u >= n_ || v >= n_) {
            throw Error(ErrorCode::OutOfRange, "city id out of range: " + std::to_string(u >= n_ ? u : v) +
                                                   " (n = " + std::to_string(n_) + ")");
        }
    }

    [[nodiscard]] DistKey key_impl(const LpNorm& lp, CityId u, CityId v) const {
        const std::int64_t dx = std::abs(coords_[u].x - coords_[v].x) * metric_.scale;
        const std::int64_t dy = std::abs(coords_[u].y - coords_[v].y) * metric_.scale;
        return {detail::ipow(dx, lp.p) + detail::ipow(dy, lp.p)};
    }

    [[nodiscard]] DistKey key_impl(const GraphicMetric& g, CityId u, CityId v) const {
        std::call_once(hop_cache_->once, [&] { hop_cache_->hops = detail::hop_distances(g.adjacency); });
        const std::int64_t hops = hop_cache_->hops(u, v);
        if (hops < 0) {
            throw Error(ErrorCode::Disconnected,
                        "disconnected: no path between " + std::to_string(u) + " and " + std::to_string(v));
        }
        return {hops * metric_.scale};
    }

    [[nodiscard]] DistKey key_impl(const ExplicitMetric& e, CityId u, CityId v) const { return {e.matrix(u, v)}; }

    std::string name_;
    std::size_t n_ = 0;
    Metric metric_;
    std::vector<GridPoint> coords_;
    std::shared_ptr<HopCache> hop_cache_;
};

inline DistKey dist_key(const Instance& instance, CityId u, CityId v) { return instance.key(u, v); }

inline Length dist_value(const Instance& instance, CityId u, CityId v) { return instance.length(u, v); }

/// Outcome of a metric or condition check. `witness` names the first failure.
struct MetricVerdict {
    bool pass = true;
    std::vector<CityId> witness;
    std::string reason;

    explicit operator bool() const noexcept { return pass; }
};

/// Symmetry, zero diagonal and the triangle inequality over all ordered triples.
/// A triangle failure reports (a, b, c) with d(a,b) + d(b,c) < d(a,c).
inline MetricVerdict validate_metric(const DistanceMatrix& m, std::size_t cap = kValidateCap) {
    const std::size_t n = m.size();
    if (n > cap) {
        throw Error(ErrorCode::Capacity, "validate_metric: n = " + std::to_string(n) + " exceeds cap " +
                                             std::to_string(cap));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) != 0) return {false, {i}, "nonzero diagonal"};
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) != m(j, i)) return {false, {i, j}, "asymmetric"};
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const std::int64_t ab = m(a, b);
            for (std::size_t c = 0; c < n; ++c) {
                if (ab + m(b, c) < m(a, c)) return {false, {a, b, c}, "triangle inequality violated"};
            }
        }
    }
    return {};
}

/// Checks the two grid conditions the greedy lower-bound family relies on:
/// same-row/same-column pairs are at their euclidean distance, and every
/// other pair is at least as far apart as its column difference.
inline MetricVerdict validate_gk_conditions(const Instance& instance, int k) {
    if (!instance.has_coords()) {
        throw Error(ErrorCode::InvalidArgument, "validate_gk_conditions requires grid coordinates");
    }
    const std::int64_t width = (detail::pow3(k + 2) - 1) / 2;
    const auto& pts = instance.coords();
    if (static_cast<std::int64_t>(pts.size()) != 2 * width) {
        return {false, {}, "coordinates do not form the level-" + std::to_string(k) + " grid"};
    }
    for (const auto& pt : pts) {
        if (pt.x < 0 || pt.x >= width || (pt.y != 0 && pt.y != 1)) {
            return {false, {}, "coordinates do not form the level-" + std::to_string(k) + " grid"};
        }
    }
    const std::size_t n = instance.size();
    const std::int64_t scale = instance.scale();
    for (CityId u = 0; u < n; ++u) {
        for (CityId v = u + 1; v < n; ++v) {
            const std::int64_t dx = std::abs(pts[u].x - pts[v].x);
            const std::int64_t dy = std::abs(pts[u].y - pts[v].y);
            if (dx == 0 || dy == 0) {
                const Length len = instance.length(u, v);
                if (!len.exact || len.scaled != (dx + dy) * scale) {
                    return {false, {u, v}, "axis-aligned pair is not at its euclidean distance"};
                }
            } else if (instance.key(u, v) < instance.key_of_scaled_length(dx * scale)) {
                return {false, {u, v}, "off-axis pair is closer than its column difference"};
            }
        }
    }
    return {};
}

}  // namespace tsplab
