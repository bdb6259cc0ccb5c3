#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsplab/common.hpp"
#include "tsplab/heuristics.hpp"
#include "tsplab/instances.hpp"
#include "tsplab/metrics.hpp"

namespace tsplab {

struct CertificateStats {
    std::size_t edge_count = 0;
    Length total;
    std::map<std::int64_t, std::size_t> length_histogram;  // scaled length -> count, exact lengths only
    std::size_t inexact_edges = 0;
};

/// Result of replaying a certificate against a heuristic's selection rule.
///
/// `fail_step` is 1-based. On failure `witness` is a strictly better eligible
/// edge when one exists; otherwise `reason` names the violated rule.
struct Verdict {
    bool pass = true;
    std::optional<std::size_t> fail_step;
    std::optional<Edge> witness;
    std::string reason;
    CertificateStats stats;

    explicit operator bool() const noexcept { return pass; }
};

namespace detail {

inline CertificateStats compute_stats(const Instance& instance, const std::vector<Edge>& edges) {
    CertificateStats stats;
    stats.total.scale = instance.scale();
    stats.edge_count = edges.size();
    for (const auto& e : edges) {
        const Length len = instance.length(e.u, e.v);
        stats.total += len;
        if (len.exact) {
            ++stats.length_histogram[len.scaled];
        } else {
            ++stats.inexact_edges;
        }
    }
    return stats;
}

inline void check_certificate_edges(const Instance& instance, const std::vector<Edge>& edges) {
    const std::size_t n = instance.size();
    std::set<std::pair<CityId, CityId>> seen;
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw Error(ErrorCode::OutOfRange, "certificate references city " + std::to_string(std::max(e.u, e.v)) +
                                                   " but the instance has " + std::to_string(n) + " cities");
        }
        if (!seen.emplace(e.lo(), e.hi()).second) {
            throw Error(ErrorCode::InvalidArgument, "certificate repeats edge {" + std::to_string(e.lo()) + ", " +
                                                        std::to_string(e.hi()) + "}");
        }
    }
}

inline Verdict fail(std::size_t step, std::string reason, std::optional<Edge> witness = std::nullopt) {
    Verdict v;
    v.pass = false;
    v.fail_step = step;
    v.reason = std::move(reason);
    v.witness = witness;
    return v;
}

inline Edge closing_edge(SelectionState& state) {
    std::vector<CityId> ends;
    for (CityId v = 0; v < state.size(); ++v) {
        if (state.degree(v) < 2) ends.push_back(v);
    }
    return {ends[0], ends[1]};
}

inline void check_hub_instance(const Instance& instance, CityId hub) {
    if (instance.size() < 4) throw Error(ErrorCode::InvalidArgument, "savings runs require at least 4 cities");
    if (hub >= instance.size()) throw Error(ErrorCode::OutOfRange, "hub id " + std::to_string(hub) + " out of range");
    if (!instance.exact_lengths()) {
        throw Error(ErrorCode::InexactLengths, "savings runs require exact lengths (L1, graphic or explicit metric)");
    }
}

}  // namespace detail

/// Replays `cert` as a greedy execution: each edge must be eligible and of
/// minimum key among all currently eligible edges (ties pass).
///
/// Uses a key-sorted edge list with a forward-only pointer; eligibility is
/// never regained except by the final closing edge, which is handled apart.
inline Verdict verify_greedy_run(const Instance& instance, const Certificate& cert) {
    detail::check_certificate_edges(instance, cert.edges);
    const std::size_t n = instance.size();

    std::vector<detail::Candidate> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (CityId u = 0; u < n; ++u) {
        for (CityId v = u + 1; v < n; ++v) candidates.push_back({instance.key(u, v).value, 0, u, v});
    }
    std::sort(candidates.begin(), candidates.end());

    SelectionState state(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < cert.edges.size(); ++i) {
        const Edge e = cert.edges[i];
        const Feasibility f = state.check(e);
        if (f != Feasibility::Ok) return detail::fail(i + 1, to_string(f));

        Edge best{};
        if (state.chosen().size() + 1 == n) {
            best = detail::closing_edge(state);
        } else {
            while (state.check({candidates[next].u, candidates[next].v}, false) != Feasibility::Ok) ++next;
            best = {candidates[next].u, candidates[next].v};
        }
        if (instance.key(e.u, e.v) > instance.key(best.u, best.v)) {
            return detail::fail(i + 1, "a cheaper eligible edge exists", best);
        }
        state.add(e);
    }
    Verdict v;
    v.stats = detail::compute_stats(instance, cert.edges);
    return v;
}

/// Reference verifier: rescans every pair at every step.
inline Verdict verify_greedy_run_bruteforce(const Instance& instance, const Certificate& cert) {
    detail::check_certificate_edges(instance, cert.edges);
    const std::size_t n = instance.size();
    SelectionState state(n);
    for (std::size_t i = 0; i < cert.edges.size(); ++i) {
        const Edge e = cert.edges[i];
        const Feasibility f = state.check(e);
        if (f != Feasibility::Ok) return detail::fail(i + 1, to_string(f));
        std::optional<Edge> best;
        for (CityId u = 0; u < n; ++u) {
            for (CityId v = u + 1; v < n; ++v) {
                if (state.check({u, v}) != Feasibility::Ok) continue;
                if (!best || instance.key(u, v) < instance.key(best->u, best->v)) best = Edge{u, v};
            }
        }
        if (instance.key(e.u, e.v) > instance.key(best->u, best->v)) {
            return detail::fail(i + 1, "a cheaper eligible edge exists", best);
        }
        state.add(e);
    }
    Verdict v;
    v.stats = detail::compute_stats(instance, cert.edges);
    return v;
}

namespace detail {

inline std::optional<Verdict> check_cw_pair(SelectionState& state, CityId hub, std::size_t step, Edge e) {
    if (e.u == hub || e.v == hub) return fail(step, "pair involves the hub");
    const Feasibility f = state.check(e, false);
    if (f != Feasibility::Ok) return fail(step, to_string(f));
    return std::nullopt;
}

}  // namespace detail

/// Replays `cert` as a Clarke-Wright shortcut sequence from `hub`: each pair
/// must be feasible and of maximum savings among all feasible pairs.
inline Verdict verify_cw_run(const Instance& instance, CityId hub, const Certificate& cert) {
    detail::check_hub_instance(instance, hub);
    detail::check_certificate_edges(instance, cert.edges);
    const std::size_t n = instance.size();

    std::vector<detail::Candidate> candidates;
    candidates.reserve((n - 1) * (n - 2) / 2);
    for (CityId a = 0; a < n; ++a) {
        for (CityId b = a + 1; b < n; ++b) {
            if (a != hub && b != hub) candidates.push_back({-savings(instance, hub, a, b), 0, a, b});
        }
    }
    std::sort(candidates.begin(), candidates.end());

    SelectionState state(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < cert.edges.size(); ++i) {
        const Edge e = cert.edges[i];
        if (auto bad = detail::check_cw_pair(state, hub, i + 1, e)) return *bad;
        while (state.check({candidates[next].u, candidates[next].v}, false) != Feasibility::Ok) ++next;
        const auto& best = candidates[next];
        if (savings(instance, hub, e.u, e.v) < -best.primary) {
            return detail::fail(i + 1, "a feasible pair with larger savings exists", Edge{best.u, best.v});
        }
        state.add(e);
    }
    Verdict v;
    v.stats = detail::compute_stats(instance, cert.edges);
    return v;
}

inline Verdict verify_cw_run_bruteforce(const Instance& instance, CityId hub, const Certificate& cert) {
    detail::check_hub_instance(instance, hub);
    detail::check_certificate_edges(instance, cert.edges);
    const std::size_t n = instance.size();
    SelectionState state(n);
    for (std::size_t i = 0; i < cert.edges.size(); ++i) {
        const Edge e = cert.edges[i];
        if (auto bad = detail::check_cw_pair(state, hub, i + 1, e)) return *bad;
        std::optional<Edge> best;
        std::int64_t best_savings = 0;
        for (CityId a = 0; a < n; ++a) {
            for (CityId b = a + 1; b < n; ++b) {
                if (a == hub || b == hub || state.check({a, b}, false) != Feasibility::Ok) continue;
                const std::int64_t s = savings(instance, hub, a, b);
                if (!best || s > best_savings) {
                    best = Edge{a, b};
                    best_savings = s;
                }
            }
        }
        if (savings(instance, hub, e.u, e.v) < best_savings) {
            return detail::fail(i + 1, "a feasible pair with larger savings exists", best);
        }
        state.add(e);
    }
    Verdict v;
    v.stats = detail::compute_stats(instance, cert.edges);
    return v;
}

/// Structural audit of a certificate: path shape, coverage, endpoints, total
/// length and the allowed edge lengths of its family.
struct CertificateAudit {
    CertificateStats stats;
    std::vector<CityId> endpoints;
    std::vector<std::string> failures;

    [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

inline CertificateAudit certificate_stats(const Instance& instance, const Certificate& cert) {
    detail::check_certificate_edges(instance, cert.edges);
    CertificateAudit audit;
    audit.stats = detail::compute_stats(instance, cert.edges);
    const std::size_t n = instance.size();

    SelectionState state(n);
    for (std::size_t i = 0; i < cert.edges.size(); ++i) {
        const Feasibility f = state.check(cert.edges[i], false);
        if (f != Feasibility::Ok) {
            audit.failures.push_back("edge " + std::to_string(i + 1) + ": " + to_string(f));
            return audit;
        }
        state.add(cert.edges[i]);
    }
    for (CityId v = 0; v < n; ++v) {
        if (state.degree(v) == 1) audit.endpoints.push_back(v);
    }

    const Length& total = audit.stats.total;
    if (!total.exact) {
        audit.failures.push_back("total length is not an exact integer");
    } else if (total.scaled != cert.expected_length) {
        audit.failures.push_back("total length " + std::to_string(total.scaled) + " differs from expected " +
                                 std::to_string(cert.expected_length));
    }

    auto require_lengths = [&](const std::set<std::int64_t>& allowed) {
        if (audit.stats.inexact_edges > 0) audit.failures.push_back("certificate has non-integer edge lengths");
        for (const auto& [len, count] : audit.stats.length_histogram) {
            if (!allowed.count(len)) {
                audit.failures.push_back(std::to_string(count) + " edge(s) of disallowed scaled length " +
                                         std::to_string(len));
            }
        }
    };

    if (cert.family == Family::Gk || cert.family == Family::CwGk) {
        const int k = static_cast<int>(cert.param);
        check_level(k);
        const GkMeta meta = gk_meta(k);
        const bool hub_family = cert.family == Family::CwGk;
        const std::size_t grid_n = meta.city_count();
        if (n != grid_n + (hub_family ? 1 : 0)) {
            audit.failures.push_back("instance has " + std::to_string(n) + " cities, level " + std::to_string(k) +
                                     " expects " + std::to_string(grid_n + (hub_family ? 1 : 0)));
            return audit;
        }
        std::size_t covered = 0;
        for (CityId v = 0; v < grid_n; ++v) covered += state.degree(v) > 0 ? 1 : 0;
        if (covered != grid_n) {
            audit.failures.push_back("covers " + std::to_string(covered) + " of " + std::to_string(grid_n) + " cities");
        }
        if (hub_family && state.degree(grid_n) != 0) audit.failures.push_back("certificate touches the hub");
        const std::vector<CityId> expected_ends = {std::min(meta.s_id, meta.r_id), std::max(meta.s_id, meta.r_id)};
        if (audit.endpoints != expected_ends) audit.failures.push_back("path endpoints are not {s_k, r_k}");

        const std::int64_t unit = instance.scale();
        const std::int64_t closed_form_total = ((2 * k + 8) * detail::pow3(k) - 1) * unit;
        if (total.exact && total.scaled != closed_form_total) {
            audit.failures.push_back("total length " + std::to_string(total.scaled) + " differs from (2k+8)*3^k-1 = " +
                                     std::to_string(closed_form_total));
        }
        std::set<std::int64_t> allowed;
        for (int i = 0; i <= k; ++i) allowed.insert(detail::pow3(i) * unit);
        require_lengths(allowed);
    } else {
        const std::int64_t count = cert.param;
        if (static_cast<std::int64_t>(cert.edges.size()) != (count + 1) / 2) {
            audit.failures.push_back("expected " + std::to_string((count + 1) / 2) + " edges, found " +
                                     std::to_string(cert.edges.size()));
        }
        require_lengths({instance.scale()});
    }
    return audit;
}

}  // namespace tsplab
