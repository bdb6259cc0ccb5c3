#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "tsplab/common.hpp"

namespace tsplab {

/// Union-find with path halving and union by size.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    CityId find(CityId x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(CityId a, CityId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(CityId a, CityId b) { return find(a) == find(b); }

private:
    std::vector<CityId> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace tsplab
