#include "cantor/lattice.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace cantor {

std::int64_t pow3(int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) p *= 3;
    return p;
}

int max_exact_depth(int d) {
    // center units need 4*d*9^k <= INT64_MAX
    const __int128 limit = INT64_MAX;
    int k = 0;
    __int128 v = 4 * static_cast<__int128>(d);
    while (v * 9 <= limit) {
        v *= 9;
        ++k;
    }
    return k;
}

int kappa(const BitVector& v) {
    int idx = 0;
    for (int j = 0; j < v.dim; ++j) idx = (idx << 1) | v.bit(j);
    return idx + 1;
}

BitVector kappa_inv(int index, int d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("kappa_inv: dimension out of range");
    if (index < 1 || index > (1 << d)) throw std::out_of_range("kappa_inv: index out of range");
    BitVector v;
    v.dim = d;
    v.bits.resize(static_cast<std::size_t>(d));
    int x = index - 1;
    for (int j = 0; j < d; ++j) v.bits[static_cast<std::size_t>(j)] = (x >> (d - 1 - j)) & 1;
    return v;
}

Rat64 SquaredDistance::value() const {
    std::int64_t p = pow3(scale_exponent);
    std::int64_t den = center_units ? 4 * p * p : p * p;
    return Rat64{numerator, den};
}

LatticeCorner corner_of(const SymbolString& s) {
    const int d = s.dim;
    const int k = s.depth();
    if (k < 1) throw std::invalid_argument("corner_of: empty symbol string");
    LatticeCorner c;
    c.dim = d;
    c.depth = k;
    c.coords.assign(static_cast<std::size_t>(d), 0);
    for (int t = 0; t < k; ++t) {
        const BitVector b = kappa_inv(s.symbols[static_cast<std::size_t>(t)], d);
        const std::int64_t w = pow3(k - 1 - t);
        for (int j = 0; j < d; ++j)
            c.coords[static_cast<std::size_t>(j)] += 2 * b.bit(j) * w;
    }
    return c;
}

SquaredDistance pair_distance_sq(const SymbolString& a, const SymbolString& b) {
    if (a.dim != b.dim || a.depth() != b.depth())
        throw std::invalid_argument("pair_distance_sq: mismatched dim or depth");
    const LatticeCorner ca = corner_of(a);
    const LatticeCorner cb = corner_of(b);
    std::int64_t n = 0;
    for (int j = 0; j < a.dim; ++j) {
        const std::int64_t diff = ca.coords[static_cast<std::size_t>(j)] - cb.coords[static_cast<std::size_t>(j)];
        n += diff * diff;
    }
    return SquaredDistance{n, a.depth(), false};
}

SquaredDistance center_distance_sq(const LatticeCorner& c) {
    const std::int64_t p = pow3(c.depth);
    std::int64_t n = 0;
    for (int j = 0; j < c.dim; ++j) {
        const std::int64_t t = p - 2 * c.coords[static_cast<std::size_t>(j)];
        n += t * t;
    }
    return SquaredDistance{n, c.depth, true};
}

SquaredDistance min_quadrant_distance(int d, int i, int j) {
    const BitVector a = kappa_inv(i, d);
    const BitVector b = kappa_inv(j, d);
    std::int64_t h = 0;
    for (int t = 0; t < d; ++t) h += a.bit(t) != b.bit(t);
    return SquaredDistance{h, 1, false};
}

RestrictedCornerStream::RestrictedCornerStream(int d, int k, std::uint64_t max_enum)
    : d_(d), k_(k) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("corner stream: dimension out of range");
    if (k < 1) throw std::invalid_argument("corner stream: depth must be >= 1");
    if (k > max_exact_depth(d))
        throw EnumerationBudgetError("corner stream: depth " + std::to_string(k) +
                                     " exceeds exact int64 range for d=" + std::to_string(d));
    chunk_bits_ = static_cast<unsigned>(k - 1);
    const unsigned total_bits = chunk_bits_ * static_cast<unsigned>(d);
    if (total_bits >= 63 || (1ull << total_bits) > max_enum)
        throw EnumerationBudgetError("corner stream: 2^" + std::to_string(total_bits) +
                                     " corners exceed enumeration budget");
    size_ = 1ull << total_bits;
    chunk_mask_ = (chunk_bits_ == 0) ? 0 : (1ull << chunk_bits_) - 1;

    const std::size_t n = std::size_t{1} << chunk_bits_;
    axis_coord_.resize(n);
    axis_center_sq_.resize(n);
    const std::int64_t p = pow3(k);
    for (std::size_t m = 0; m < n; ++m) {
        std::int64_t coord = 0;
        for (unsigned t = 0; t < chunk_bits_; ++t) {
            const std::int64_t digit = ((m >> (chunk_bits_ - 1 - t)) & 1) ? 2 : 0;
            coord = coord * 3 + digit;
        }
        axis_coord_[m] = coord;
        const std::int64_t c = p - 2 * coord;
        axis_center_sq_[m] = c * c;
    }
}

LatticeCorner RestrictedCornerStream::corner(std::uint64_t index) const {
    LatticeCorner c;
    c.dim = d_;
    c.depth = k_;
    c.coords.resize(static_cast<std::size_t>(d_));
    for (int j = 0; j < d_; ++j) {
        const std::uint64_t chunk =
            chunk_bits_ == 0 ? 0 : (index >> (chunk_bits_ * static_cast<unsigned>(d_ - 1 - j))) & chunk_mask_;
        c.coords[static_cast<std::size_t>(j)] = axis_coord_[static_cast<std::size_t>(chunk)];
    }
    return c;
}

std::int64_t RestrictedCornerStream::center_sq_numerator(std::uint64_t index) const {
    std::int64_t n = 0;
    for (int j = 0; j < d_; ++j) {
        const std::uint64_t chunk =
            chunk_bits_ == 0 ? 0 : (index >> (chunk_bits_ * static_cast<unsigned>(d_ - 1 - j))) & chunk_mask_;
        n += axis_center_sq_[static_cast<std::size_t>(chunk)];
    }
    return n;
}

namespace {

struct GroupElement {
    std::array<int, kMaxDim> perm;
    unsigned flips;
};

int act(int quadrant, int d, const GroupElement& g) {
    const int x = quadrant - 1;
    int y = 0;
    for (int j = 0; j < d; ++j) {
        const int src = g.perm[static_cast<std::size_t>(j)];
        const int bit = ((x >> (d - 1 - src)) & 1) ^ ((g.flips >> j) & 1);
        y |= bit << (d - 1 - j);
    }
    return y + 1;
}

std::vector<GroupElement> hyperoctahedral_group(int d) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) perm[static_cast<std::size_t>(j)] = j;
    std::vector<GroupElement> out;
    do {
        for (unsigned f = 0; f < (1u << d); ++f) {
            GroupElement g;
            std::copy(perm.begin(), perm.end(), g.perm.begin());
            g.flips = f;
            out.push_back(g);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

std::vector<std::vector<int>> canonical_quadrant_classes(int d, int q, std::uint64_t budget) {
    const int n = 1 << d;
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("quadrant classes: dimension out of range");
    if (q < 2 || q > n) throw std::invalid_argument("quadrant classes: subset size out of range");

    const auto group = hyperoctahedral_group(d);
    // cost = C(n, q) * |group|
    double subsets = 1;
    for (int i = 0; i < q; ++i) subsets = subsets * (n - i) / (i + 1);
    if (subsets * static_cast<double>(group.size()) > static_cast<double>(budget))
        throw CombinatorialBudgetError("quadrant classes: orbit enumeration exceeds budget");

    std::vector<std::vector<int>> reps;
    std::vector<int> sub(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) sub[static_cast<std::size_t>(i)] = i + 1;

    std::set<std::vector<int>> seen;
    std::vector<int> img(static_cast<std::size_t>(q));
    while (true) {
        if (!seen.count(sub)) {
            // canonical representative = min image over the group
            std::vector<int> best = sub;
            for (const auto& g : group) {
                for (int i = 0; i < q; ++i) img[static_cast<std::size_t>(i)] = act(sub[static_cast<std::size_t>(i)], d, g);
                std::sort(img.begin(), img.end());
                if (img < best) best = img;
            }
            if (best == sub) {
                reps.push_back(sub);
                // mark the whole orbit as seen
                for (const auto& g : group) {
                    for (int i = 0; i < q; ++i) img[static_cast<std::size_t>(i)] = act(sub[static_cast<std::size_t>(i)], d, g);
                    std::sort(img.begin(), img.end());
                    seen.insert(img);
                }
            } else {
                seen.insert(sub);
            }
        }
        // next combination
        int i = q - 1;
        while (i >= 0 && sub[static_cast<std::size_t>(i)] == n - (q - 1 - i)) --i;
        if (i < 0) break;
        ++sub[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < q; ++j) sub[static_cast<std::size_t>(j)] = sub[static_cast<std::size_t>(j - 1)] + 1;
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

}  // namespace cantor
