#pragma once

// Maximum cardinality matching in a general graph (Edmonds' blossom
// algorithm). Augmenting-path exhaustion certifies maximality; the returned
// pairs are always validated to be vertex-disjoint edges of the input.

#include <cstdint>
#include <utility>
#include <vector>

namespace cantor {

struct MatchResult {
    int size = 0;
    std::vector<std::pair<int, int>> pairs;
};

MatchResult max_matching(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace cantor
