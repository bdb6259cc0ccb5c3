#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tsplab/common.hpp"
#include "tsplab/disjoint_set.hpp"
#include "tsplab/instances.hpp"
#include "tsplab/metrics.hpp"

namespace tsplab {

// Tie-breaking policies among candidates of equal key (greedy) or equal
// savings (Clarke-Wright). All of them end in (min id, max id), so every policy
// is a strict total order.
struct Lexicographic {};

/// Certificate edges first, in certificate order; everything else lexicographic.
struct CertificateFirst {
    std::vector<Edge> edges;

    CertificateFirst() = default;
    explicit CertificateFirst(std::vector<Edge> e) : edges(std::move(e)) {}
    explicit CertificateFirst(const Certificate& cert) : edges(cert.edges) {}
};

struct SeededRandom {
    std::uint64_t seed = 0;
};

using TieBreak = std::variant<Lexicographic, CertificateFirst, SeededRandom>;

/// One accepted edge. `value` is the distance key for greedy and the scaled
/// savings for Clarke-Wright.
struct TraceEvent {
    Edge edge;
    std::int64_t value = 0;
};

struct Tour {
    std::vector<CityId> order;
    Length length;
    std::vector<TraceEvent> trace;
};

enum class Feasibility { Ok, SelfLoop, DegreeFull, ClosesCycle };

inline std::string to_string(Feasibility f) {
    switch (f) {
        case Feasibility::Ok: return "ok";
        case Feasibility::SelfLoop: return "self-loop";
        case Feasibility::DegreeFull: return "endpoint already has degree 2";
        case Feasibility::ClosesCycle: return "edge closes a cycle";
    }
    return "?";
}

/// Working state of an edge-selection heuristic: degrees, components, choices.
class SelectionState {
public:
    explicit SelectionState(std::size_t n) : degree_(n, 0), components_(n) {}

    /// Greedy eligibility. The cycle-closing edge is eligible only once n - 1
    /// edges are chosen; with `allow_closing` false it never is.
    [[nodiscard]] Feasibility check(Edge e, bool allow_closing = true) {
        if (e.u == e.v) return Feasibility::SelfLoop;
        if (degree_[e.u] >= 2 || degree_[e.v] >= 2) return Feasibility::DegreeFull;
        if (components_.same(e.u, e.v) && !(allow_closing && chosen_.size() + 1 == degree_.size())) {
            return Feasibility::ClosesCycle;
        }
        return Feasibility::Ok;
    }

    void add(Edge e) {
        ++degree_[e.u];
        ++degree_[e.v];
        components_.unite(e.u, e.v);
        chosen_.push_back(e);
    }

    [[nodiscard]] int degree(CityId v) const { return degree_[v]; }
    [[nodiscard]] const std::vector<Edge>& chosen() const noexcept { return chosen_; }
    [[nodiscard]] std::size_t size() const noexcept { return degree_.size(); }
    bool connected(CityId a, CityId b) { return components_.same(a, b); }

private:
    std::vector<int> degree_;
    DisjointSet components_;
    std::vector<Edge> chosen_;
};

namespace detail {

struct Candidate {
    std::int64_t primary = 0;
    std::uint64_t secondary = 0;
    CityId u = 0;
    CityId v = 0;

    friend bool operator<(const Candidate& a, const Candidate& b) {
        if (a.primary != b.primary) return a.primary < b.primary;
        if (a.secondary != b.secondary) return a.secondary < b.secondary;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Secondary sort key for candidate (u < v) under a policy.
class TieRanker {
public:
    TieRanker(const TieBreak& tie, std::size_t n) : tie_(tie), n_(n) {
        if (const auto* cf = std::get_if<CertificateFirst>(&tie_)) {
            for (std::size_t i = 0; i < cf->edges.size(); ++i) {
                const Edge e = cf->edges[i].normalized();
                if (e.hi() >= n) throw Error(ErrorCode::OutOfRange, "tie-break certificate references city " +
                                                                        std::to_string(e.hi()));
                rank_.try_emplace(e.lo() * n_ + e.hi(), i);
            }
        }
    }

    [[nodiscard]] std::uint64_t operator()(CityId u, CityId v) const {
        const std::uint64_t slot = u * n_ + v;
        if (std::holds_alternative<CertificateFirst>(tie_)) {
            const auto it = rank_.find(slot);
            return it == rank_.end() ? std::numeric_limits<std::uint64_t>::max() : it->second;
        }
        if (const auto* sr = std::get_if<SeededRandom>(&tie_)) return splitmix64(sr->seed ^ splitmix64(slot));
        return 0;
    }

private:
    const TieBreak& tie_;
    std::size_t n_;
    std::unordered_map<std::uint64_t, std::uint64_t> rank_;
};

inline Length tour_length(const Instance& instance, const std::vector<CityId>& order) {
    Length total;
    total.scale = instance.scale();
    for (std::size_t i = 0; i < order.size(); ++i) total += instance.length(order[i], order[(i + 1) % order.size()]);
    return total;
}

/// Cyclic order from a Hamiltonian cycle's edge set, starting at city 0
/// towards its smaller neighbour.
inline std::vector<CityId> cycle_order(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<CityId>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<CityId> order;
    order.reserve(n);
    CityId prev = 0;
    CityId cur = 0;
    order.push_back(0);
    CityId next = std::min(adj[0][0], adj[0][1]);
    while (next != 0) {
        order.push_back(next);
        prev = cur;
        cur = next;
        next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    }
    return order;
}

}  // namespace detail

/// Greedy edge selection: repeatedly add a cheapest edge that keeps the chosen
/// set a union of vertex-disjoint paths, then close the Hamiltonian path.
inline Tour greedy_tour(const Instance& instance, const TieBreak& tie = Lexicographic{}) {
    const std::size_t n = instance.size();
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "greedy_tour requires at least 3 cities");

    const detail::TieRanker rank(tie, n);
    std::vector<detail::Candidate> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (CityId u = 0; u < n; ++u) {
        for (CityId v = u + 1; v < n; ++v) candidates.push_back({instance.key(u, v).value, rank(u, v), u, v});
    }
    std::sort(candidates.begin(), candidates.end());

    SelectionState state(n);
    Tour tour;
    // Eligibility never returns once lost, so a single forward pointer suffices.
    std::size_t next = 0;
    while (state.chosen().size() + 1 < n) {
        while (state.check({candidates[next].u, candidates[next].v}, false) != Feasibility::Ok) ++next;
        const auto& c = candidates[next++];
        state.add({c.u, c.v});
        tour.trace.push_back({{c.u, c.v}, c.primary});
    }
    // closing edge joins the two path endpoints
    std::vector<CityId> ends;
    for (CityId v = 0; v < n; ++v) {
        if (state.degree(v) < 2) ends.push_back(v);
    }
    const Edge closing{ends[0], ends[1]};
    state.add(closing);
    tour.trace.push_back({closing, instance.key(closing.u, closing.v).value});

    tour.order = detail::cycle_order(n, state.chosen());
    tour.length = detail::tour_length(instance, tour.order);
    return tour;
}

/// c(a, hub) + c(b, hub) - c(a, b), scaled.
inline std::int64_t savings(const Instance& instance, CityId hub, CityId a, CityId b) {
    if (a == b || a == hub || b == hub) {
        throw Error(ErrorCode::InvalidArgument, "savings requires three distinct cities");
    }
    return instance.scaled_length(a, hub) + instance.scaled_length(b, hub) - instance.scaled_length(a, b);
}

/// Clarke-Wright savings heuristic from `hub`: start from doubled hub edges and
/// short-cut pairs in nonincreasing savings order while both cities still have
/// a hub edge to give up and no cycle forms among the non-hub cities.
inline Tour clarke_wright(const Instance& instance, CityId hub, const TieBreak& tie = Lexicographic{}) {
    const std::size_t n = instance.size();
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "clarke_wright requires at least 4 cities");
    if (hub >= n) throw Error(ErrorCode::OutOfRange, "hub id " + std::to_string(hub) + " out of range");
    if (!instance.exact_lengths()) {
        throw Error(ErrorCode::InexactLengths, "clarke_wright requires exact lengths (L1, graphic or explicit metric)");
    }

    const detail::TieRanker rank(tie, n);
    std::vector<detail::Candidate> candidates;
    candidates.reserve((n - 1) * (n - 2) / 2);
    for (CityId a = 0; a < n; ++a) {
        if (a == hub) continue;
        for (CityId b = a + 1; b < n; ++b) {
            if (b == hub) continue;
            candidates.push_back({-savings(instance, hub, a, b), rank(a, b), a, b});
        }
    }
    std::sort(candidates.begin(), candidates.end());

    SelectionState state(n);
    Tour tour;
    for (const auto& c : candidates) {
        if (state.chosen().size() + 2 == n) break;
        if (state.check({c.u, c.v}, false) != Feasibility::Ok) continue;
        state.add({c.u, c.v});
        tour.trace.push_back({{c.u, c.v}, -c.primary});
    }

    std::vector<Edge> edges = state.chosen();
    for (CityId v = 0; v < n; ++v) {
        if (v == hub) continue;
        for (int d = state.degree(v); d < 2; ++d) edges.push_back({hub, v});
    }
    tour.order = detail::cycle_order(n, edges);
    tour.length = detail::tour_length(instance, tour.order);
    return tour;
}

}  // namespace tsplab
