#pragma once

// Lower bounds via diameter refinement: repulsive-pair graphs over quadrant
// unions, maximum-matching measure caps, the W exclusion function, a generic
// contradiction loop quantifying over all quadrant classes, and a
// step-verified replay of the fixed dimension-3 derivation chain.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantor/directed.hpp"
#include "cantor/lattice.hpp"
#include "cantor/matching.hpp"
#include "cantor/rat.hpp"

namespace cantor {

struct LowerOptions {
    std::uint64_t max_vertices = 1ull << 13;
    std::uint64_t class_budget = 1ull << 28;
};

// Vertices are the level-k cubes whose first symbol lies in Q; edges join
// cubes in different quadrants at exact squared corner distance >= threshold
// (closed comparison: the refinement loop assumes |B| < L strictly).
struct RepulsiveGraph {
    int d = 0;
    int k = 0;
    std::vector<int> quadrants;
    Rat64 threshold_sq;

    struct Vertex {
        int quadrant = 0;
        std::uint64_t rest = 0;  // packed depth-(k-1) corner index
    };
    std::vector<Vertex> vertices;
    std::vector<std::pair<int, int>> edges;

    LatticeCorner corner(int vi) const;
    SymbolString symbol(int vi) const;
};

RepulsiveGraph build_repulsive_graph(int d, int k, const std::vector<int>& quadrants,
                                     const Rat64& threshold_sq, const LowerOptions& opts = {});

MatchResult max_matching(const RepulsiveGraph& g);

// (T - M) / 2^(kd) with T = |Q| * 2^((k-1)d) and M the maximum matching:
// a valid upper bound on mu(B) for any B with B∩C^d inside the quadrant
// union and |B| < L. Any matching is sound; the maximum is the tightest.
Rat64 measure_cap(int d, int k, const std::vector<int>& quadrants, const Rat64& threshold_sq,
                  const LowerOptions& opts = {});

// W_{d,k}(x) = (H_d * (1 - N_k(x) * 2^(d-kd-1)))^(1/s_d), evaluated downward;
// N_k(x) is the maximum matching between the quadrant-1 and quadrant-2^d
// prefix trees at squared threshold x. Returns 0 when the cap reaches 1.
double W_eval(int d, int k, const Rat64& diam_sq, double H_d, const LowerOptions& opts = {});

struct RefinementStep {
    std::vector<std::vector<int>> assumed_classes;  // feasible class reps
    Rat64 threshold_sq;
    std::vector<int> matching_sizes;  // per feasible class
    Rat64 cap;                        // weakest (largest) feasible-class cap
    double mu_min = 0;                // directed-down measure lower bound
    Rat64 new_bound_sq;               // = threshold_sq once accepted
};

struct LowerBoundChain {
    int d = 0;
    int k = 0;
    double upper_bound_used = 0;
    std::vector<RefinementStep> steps;
    Rat64 final_sq;
    double final_value = 0;  // pow_directed(final_sq, s_d/2, down), mu <= 1
    bool certified = false;
    std::string note;

    BoundResult to_bound_result() const;
};

enum class SeedRule { FiveNinths, OneThird };

// Generic refinement loop: starting from the seed diameter, repeatedly accept
// the largest realized pair distance L' such that EVERY distance-feasible
// quadrant class has measure cap below the current certified measure minimum.
LowerBoundChain refine_lower_bound(int d, int k, const BoundResult& upper,
                                   SeedRule seed = SeedRule::FiveNinths,
                                   const LowerOptions& opts = {});

struct ReplayError : std::runtime_error {
    int step;
    LowerBoundChain partial;  // verified prefix of the chain

    ReplayError(int step_, LowerBoundChain partial_, const std::string& what_)
        : std::runtime_error(what_), step(step_), partial(std::move(partial_)) {}
};

// Step-verified replay of the fixed d=3, k=2 derivation chain
// 5/9 -> 2*sqrt(11)/9 -> 2*sqrt(2)/3 -> 2*sqrt(26)/9. Every pinned pair list,
// matching size, measure cap and measure minimum is recomputed; a step whose
// recomputation disagrees with its asserted inequality throws ReplayError
// with the failing step identified and the verified prefix attached.
LowerBoundChain replay_d3(const BoundResult& upper3);

}  // namespace cantor
