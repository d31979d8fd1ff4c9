#pragma once

// Generalized centered-ball sweep: exact histogram of squared corner-to-center
// distances over the restricted corner stream, then the certified minimum of
// (2r)^s / mu over the realized radii.

#include <cstdint>
#include <vector>

#include "cantor/directed.hpp"
#include "cantor/lattice.hpp"
#include "cantor/rat.hpp"

namespace cantor {

enum class HistMethod { Auto, Direct, Convolve };

struct EngineOptions {
    std::uint64_t max_enum = RestrictedCornerStream::kDefaultEnumBudget;
    int threads = 0;  // 0 = hardware concurrency
    HistMethod method = HistMethod::Auto;
};

struct HistEntry {
    std::int64_t sq_num = 0;  // squared distance numerator, units (2*3^k)^-2
    std::int64_t cum = 0;     // cumulative corner count at or below sq_num
};

struct DistanceHistogram {
    int d = 0;
    int k = 0;
    std::vector<HistEntry> entries;  // strictly increasing sq_num and cum

    Rat64 sq_dist(std::size_t i) const {
        const std::int64_t p = pow3(k);
        return Rat64{entries[i].sq_num, 4 * p * p};
    }
    std::uint64_t total_count() const {
        return entries.empty() ? 0 : static_cast<std::uint64_t>(entries.back().cum);
    }
};

// Exact histogram of center_distance_sq over restricted_corner_stream(d, k).
// Aggregation is order-independent: identical output for any thread count.
DistanceHistogram build_histogram(int d, int k, const EngineOptions& opts = {});

// Certified upper bound on H^{s_d}(C^d) from a histogram sweep.
BoundResult upper_bound(const DistanceHistogram& hist);
BoundResult upper_bound(int d, int k, const EngineOptions& opts = {});

}  // namespace cantor
