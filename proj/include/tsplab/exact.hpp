#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "tsplab/common.hpp"
#include "tsplab/instances.hpp"
#include "tsplab/metrics.hpp"

namespace tsplab {

inline constexpr std::size_t kHeldKarpCap = 18;
inline constexpr std::size_t kBruteForceCap = 10;

enum class OptMethod { HeldKarp, BruteForce, ClosedForm };

struct OptResult {
    std::int64_t length_scaled = 0;
    std::int64_t scale = 1;
    std::vector<CityId> tour;
    OptMethod method = OptMethod::HeldKarp;
};

/// Subset dynamic program over (visited set, last city), anchored at city 0.
inline OptResult held_karp(const Instance& instance) {
    const std::size_t n = instance.size();
    if (n < 3 || n > kHeldKarpCap) {
        throw Error(ErrorCode::OutOfRange, "held_karp supports 3 <= n <= " + std::to_string(kHeldKarpCap) +
                                               ", got n = " + std::to_string(n));
    }
    const DistanceMatrix d = instance.scaled_matrix();
    const std::size_t m = n - 1;  // cities 1..n-1 map to bits 0..m-1
    const std::size_t full = (std::size_t{1} << m) - 1;
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    std::vector<std::int64_t> cost((full + 1) * m, kInf);
    std::vector<std::uint8_t> parent((full + 1) * m, 0);
    for (std::size_t j = 0; j < m; ++j) cost[(std::size_t{1} << j) * m + j] = d(0, j + 1);

    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (std::size_t j = 0; j < m; ++j) {
            const std::int64_t here = cost[mask * m + j];
            if (!(mask >> j & 1) || here >= kInf) continue;
            for (std::size_t t = 0; t < m; ++t) {
                if (mask >> t & 1) continue;
                const std::size_t next = mask | (std::size_t{1} << t);
                const std::int64_t cand = here + d(j + 1, t + 1);
                if (cand < cost[next * m + t]) {
                    cost[next * m + t] = cand;
                    parent[next * m + t] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    OptResult out;
    out.scale = instance.scale();
    out.method = OptMethod::HeldKarp;
    out.length_scaled = kInf;
    std::size_t last = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::int64_t cand = cost[full * m + j] + d(j + 1, 0);
        if (cand < out.length_scaled) {
            out.length_scaled = cand;
            last = j;
        }
    }
    std::vector<CityId> reversed;
    std::size_t mask = full;
    for (std::size_t step = 0; step < m; ++step) {
        reversed.push_back(last + 1);
        const std::size_t prev = parent[mask * m + last];
        mask &= ~(std::size_t{1} << last);
        last = prev;
    }
    out.tour.push_back(0);
    out.tour.insert(out.tour.end(), reversed.rbegin(), reversed.rend());
    return out;
}

/// Exhaustive enumeration of all (n-1)!/2 tours.
inline OptResult brute_force(const Instance& instance) {
    const std::size_t n = instance.size();
    if (n < 3 || n > kBruteForceCap) {
        throw Error(ErrorCode::OutOfRange, "brute_force supports 3 <= n <= " + std::to_string(kBruteForceCap) +
                                               ", got n = " + std::to_string(n));
    }
    const DistanceMatrix d = instance.scaled_matrix();
    std::vector<CityId> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);

    OptResult out;
    out.scale = instance.scale();
    out.method = OptMethod::BruteForce;
    out.length_scaled = std::numeric_limits<std::int64_t>::max();
    do {
        if (perm.front() > perm.back()) continue;  // each cycle once per direction
        std::int64_t len = d(0, perm.front()) + d(perm.back(), 0);
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) len += d(perm[i], perm[i + 1]);
        if (len < out.length_scaled) {
            out.length_scaled = len;
            out.tour.assign({0});
            out.tour.insert(out.tour.end(), perm.begin(), perm.end());
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

struct OptValue {
    std::int64_t length_scaled = 0;
    std::int64_t scale = 1;
    std::string tag;  // "exact", "paper-bound" or "constructive"
    bool exact = false;
};

/// Closed-form optimum (or upper bounds) for a generated family.
///
/// Grid and 1-2 families have known optima equal to their city count. For the
/// hub family only upper bounds are returned: the bound n + 3^{k+2} used in the
/// ratio denominator, and n - 1 + 3^{k+2} from inserting the hub into an optimal
/// grid cycle in place of one unit edge.
inline std::vector<OptValue> family_opt(Family family, std::int64_t param) {
    switch (family) {
        case Family::Gk: {
            check_level(static_cast<int>(param));
            return {{detail::pow3(static_cast<int>(param) + 2) - 1, 1, "exact", true}};
        }
        case Family::OneTwo: {
            check_one_two_size(param);
            return {{param, 1, "exact", true}};
        }
        case Family::CwGk: {
            const int k = static_cast<int>(param);
            check_level(k);
            const std::int64_t grid_n = detail::pow3(k + 2) - 1;
            const std::int64_t hub_pair = detail::pow3(k + 2);  // two hub edges of length 3^{k+2}/2
            return {{2 * (grid_n + hub_pair), 2, "paper-bound", false},
                    {2 * (grid_n - 1 + hub_pair), 2, "constructive", false}};
        }
    }
    return {};
}

}  // namespace tsplab
