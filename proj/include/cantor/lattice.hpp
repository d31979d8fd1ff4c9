#pragma once

// Exact combinatorial geometry of the level-k basic cubes of the d-fold
// Cartesian power of the ternary Cantor set. Corners live on the integer
// lattice in units 3^-k and every distance is carried as a scaled integer;
// nothing in this module rounds.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cantor/rat.hpp"

namespace cantor {

inline constexpr int kMaxDim = 16;

struct EnumerationBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CombinatorialBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t pow3(int k);

// d binary digits (i_1,...,i_d); i_1 is the most significant lexicographically.
struct BitVector {
    int dim = 0;
    std::vector<std::uint8_t> bits;

    std::uint8_t bit(int j) const { return bits[static_cast<std::size_t>(j)]; }
};

// 1-based lexicographic index of a bit vector: 1 + sum bits[j] * 2^(d-1-j).
int kappa(const BitVector& v);
BitVector kappa_inv(int index, int d);

// Address (i_1,...,i_k) of a level-k basic cube, each symbol in 1..2^d.
struct SymbolString {
    int dim = 0;
    std::vector<int> symbols;

    int depth() const { return static_cast<int>(symbols.size()); }
};

// Origin-nearest corner of a basic cube, coords integer in units 3^-k.
// Every coordinate written base 3 with k digits uses only digits {0,2}.
struct LatticeCorner {
    int dim = 0;
    int depth = 0;
    std::vector<std::int64_t> coords;
};

// Exact squared distance: numerator / 3^(2e), or numerator / (2*3^e)^2
// when center_units is set.
struct SquaredDistance {
    std::int64_t numerator = 0;
    int scale_exponent = 0;
    bool center_units = false;

    Rat64 value() const;
};

// Deepest level whose squared distances stay exactly representable in int64.
int max_exact_depth(int d);

LatticeCorner corner_of(const SymbolString& s);
SquaredDistance pair_distance_sq(const SymbolString& a, const SymbolString& b);
SquaredDistance center_distance_sq(const LatticeCorner& c);

// Exact squared gap between level-1 basic sets D_i and D_j: Hamming(i,j)/9.
SquaredDistance min_quadrant_distance(int d, int i, int j);

// The 2^((k-1)d) corners whose every coordinate has leading base-3 digit 0
// (cubes inside [0,1/3]^d), in lexicographic order over the packed bits.
// Index layout: d chunks of (k-1) bits, axis 0 most significant; within a
// chunk, bit t (MSB first) is base-3 digit t+1 of that axis, 1 <=> digit 2.
class RestrictedCornerStream {
public:
    RestrictedCornerStream(int d, int k, std::uint64_t max_enum = kDefaultEnumBudget);

    std::uint64_t size() const { return size_; }
    int dim() const { return d_; }
    int depth() const { return k_; }

    LatticeCorner corner(std::uint64_t index) const;
    // Squared distance of the corner from the cube-lattice center, numerator
    // in units (2*3^k)^-2. On these corners the value is also the farthest
    // point of the cube from the center, which is what makes ball counting a
    // valid lower bound on covered cubes.
    std::int64_t center_sq_numerator(std::uint64_t index) const;

    // Per-chunk tables (size 2^(k-1)): axis coordinate and its center term.
    const std::vector<std::int64_t>& axis_coord() const { return axis_coord_; }
    const std::vector<std::int64_t>& axis_center_sq() const { return axis_center_sq_; }

    static constexpr std::uint64_t kDefaultEnumBudget = 1ull << 26;

private:
    int d_;
    int k_;
    std::uint64_t size_;
    unsigned chunk_bits_;
    std::uint64_t chunk_mask_;
    std::vector<std::int64_t> axis_coord_;
    std::vector<std::int64_t> axis_center_sq_;
};

// One representative per orbit of size-q subsets of {1..2^d} under the
// hyperoctahedral group (axis permutations and per-axis bit flips).
// Representatives are the lexicographically least subset of each orbit,
// returned in ascending order; orbits are exhaustive and disjoint.
std::vector<std::vector<int>> canonical_quadrant_classes(
    int d, int q, std::uint64_t budget = 1ull << 28);

}  // namespace cantor
