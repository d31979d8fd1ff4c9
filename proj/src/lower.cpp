#include "cantor/lower.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cantor {

namespace {

// corner of quadrant q's cube with packed rest index r, units 3^-k
std::vector<std::int64_t> vertex_corner(int d, int k, int q, std::uint64_t rest,
                                        const RestrictedCornerStream& rest_stream) {
    const std::int64_t w = pow3(k - 1);
    const BitVector b = kappa_inv(q, d);
    LatticeCorner rc = rest_stream.corner(rest);
    std::vector<std::int64_t> c(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        c[static_cast<std::size_t>(j)] = 2 * b.bit(j) * w + rc.coords[static_cast<std::size_t>(j)];
    return c;
}

std::int64_t dist_sq(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t n = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const std::int64_t t = a[j] - b[j];
        n += t * t;
    }
    return n;
}

// threshold comparison in corner units: dist_num/9^k >= L2  <=>  dist_num * L2.den >= L2.num * 9^k
bool at_least_threshold(std::int64_t dist_num, std::int64_t nine_k, const Rat64& L2) {
    return static_cast<__int128>(dist_num) * L2.den >=
           static_cast<__int128>(L2.num) * nine_k;
}

}  // namespace

LatticeCorner RepulsiveGraph::corner(int vi) const {
    // the leading-zero restriction of the depth-k stream is exactly the
    // (k-1)-digit tail pattern of a quadrant cube
    const RestrictedCornerStream rest(d, k);
    const auto& v = vertices[static_cast<std::size_t>(vi)];
    LatticeCorner c;
    c.dim = d;
    c.depth = k;
    c.coords = vertex_corner(d, k, v.quadrant, v.rest, rest);
    return c;
}

SymbolString RepulsiveGraph::symbol(int vi) const {
    const auto& v = vertices[static_cast<std::size_t>(vi)];
    SymbolString s;
    s.dim = d;
    s.symbols.push_back(v.quadrant);
    // decode rest index back to symbols: each depth level contributes one
    // bit per axis; chunk bit t of axis j is digit t+1 of that axis.
    const unsigned chunk_bits = static_cast<unsigned>(k - 1);
    for (unsigned t = 0; t < chunk_bits; ++t) {
        BitVector b;
        b.dim = d;
        b.bits.resize(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            const std::uint64_t chunk =
                (v.rest >> (chunk_bits * static_cast<unsigned>(d - 1 - j))) &
                ((chunk_bits == 0) ? 0 : (1ull << chunk_bits) - 1);
            b.bits[static_cast<std::size_t>(j)] = (chunk >> (chunk_bits - 1 - t)) & 1;
        }
        s.symbols.push_back(kappa(b));
    }
    return s;
}

RepulsiveGraph build_repulsive_graph(int d, int k, const std::vector<int>& quadrants,
                                     const Rat64& threshold_sq, const LowerOptions& opts) {
    if (quadrants.size() < 2) throw std::invalid_argument("repulsive graph: need at least two quadrants");
    for (int q : quadrants)
        if (q < 1 || q > (1 << d)) throw std::invalid_argument("repulsive graph: quadrant out of range");
    if (k > max_exact_depth(d))
        throw EnumerationBudgetError("repulsive graph: depth exceeds exact int64 range");

    const RestrictedCornerStream rest(d, k);
    const std::uint64_t per_quadrant = rest.size();
    const std::uint64_t total = per_quadrant * quadrants.size();
    if (total > opts.max_vertices)
        throw EnumerationBudgetError("repulsive graph: vertex count exceeds budget");

    RepulsiveGraph g;
    g.d = d;
    g.k = k;
    g.quadrants = quadrants;
    g.threshold_sq = threshold_sq;

    std::vector<std::vector<std::int64_t>> corners;
    corners.reserve(total);
    for (int q : quadrants)
        for (std::uint64_t r = 0; r < per_quadrant; ++r) {
            g.vertices.push_back(RepulsiveGraph::Vertex{q, r});
            corners.push_back(vertex_corner(d, k, q, r, rest));
        }

    const std::int64_t p3k = pow3(k);
    const std::int64_t nine_k = p3k * p3k;
    const int n = static_cast<int>(g.vertices.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (g.vertices[static_cast<std::size_t>(i)].quadrant ==
                g.vertices[static_cast<std::size_t>(j)].quadrant)
                continue;
            if (at_least_threshold(dist_sq(corners[static_cast<std::size_t>(i)],
                                           corners[static_cast<std::size_t>(j)]),
                                   nine_k, threshold_sq))
                g.edges.emplace_back(i, j);
        }
    return g;
}

MatchResult max_matching(const RepulsiveGraph& g) {
    return max_matching(static_cast<int>(g.vertices.size()), g.edges);
}

Rat64 measure_cap(int d, int k, const std::vector<int>& quadrants, const Rat64& threshold_sq,
                  const LowerOptions& opts) {
    const RepulsiveGraph g = build_repulsive_graph(d, k, quadrants, threshold_sq, opts);
    const MatchResult m = max_matching(g);
    const std::int64_t T = static_cast<std::int64_t>(g.vertices.size());
    if (k * d >= 62) throw EnumerationBudgetError("measure_cap: 2^(kd) exceeds int64");
    return Rat64{T - m.size, static_cast<std::int64_t>(1) << (k * d)};
}

double W_eval(int d, int k, const Rat64& diam_sq, double H_d, const LowerOptions& opts) {
    if (k * d + 1 >= 63) throw EnumerationBudgetError("W_eval: 2^(kd+1) exceeds int64");
    const std::vector<int> Q{1, 1 << d};
    const RepulsiveGraph g = build_repulsive_graph(d, k, Q, diam_sq, opts);
    const int N = max_matching(g).size;
    // cap = N * 2^(d - kd - 1)
    const Rat64 cap{static_cast<std::int64_t>(N) * (static_cast<std::int64_t>(1) << d),
                    static_cast<std::int64_t>(1) << (k * d + 1)};
    const Rat64 one_minus = rat_sub(Rat64{1}, cap);
    if (one_minus.num <= 0) return 0.0;
    return pow_directed_scaled(H_d, one_minus, Exponent::inverse_dimension(d), Round::Down);
}

BoundResult LowerBoundChain::to_bound_result() const {
    BoundResult r;
    r.direction = BoundResult::Direction::Lower;
    r.value = final_value;
    r.d = d;
    r.k = k;
    r.certified = certified;
    r.rounding_budget = static_cast<double>(steps.size() + 1) * 2 * kEvalRelBudget;
    return r;
}

LowerBoundChain refine_lower_bound(int d, int k, const BoundResult& upper, SeedRule seed,
                                   const LowerOptions& opts) {
    if (upper.direction != BoundResult::Direction::Upper || upper.d != d)
        throw std::invalid_argument("refine_lower_bound: needs a certified upper bound for the same d");
    const double H = upper.value;

    LowerBoundChain chain;
    chain.d = d;
    chain.k = k;
    chain.upper_bound_used = H;
    chain.final_sq = seed == SeedRule::FiveNinths ? Rat64{25, 81} : Rat64{1, 9};

    // realized squared pair distances between different quadrants, by Hamming
    // class representative (quadrant 1 against the first-h-bits-flipped one)
    const RestrictedCornerStream rest(d, k);
    const std::uint64_t per_quadrant = rest.size();
    if (per_quadrant * per_quadrant > (1ull << 30))
        throw EnumerationBudgetError("refine_lower_bound: distance ladder exceeds budget");
    if ((std::uint64_t{1} << d) * per_quadrant > opts.max_vertices)
        throw EnumerationBudgetError("refine_lower_bound: full-union graph exceeds vertex budget");
    const std::int64_t p3k = pow3(k);
    const std::int64_t nine_k = p3k * p3k;
    std::set<std::int64_t> ladder_set;
    const std::int64_t w = pow3(k - 1);
    std::vector<LatticeCorner> rest_corners;
    rest_corners.reserve(per_quadrant);
    for (std::uint64_t r = 0; r < per_quadrant; ++r) rest_corners.push_back(rest.corner(r));
    for (int h = 1; h <= d; ++h) {
        for (std::uint64_t r1 = 0; r1 < per_quadrant; ++r1) {
            const LatticeCorner& c1 = rest_corners[r1];
            for (std::uint64_t r2 = 0; r2 < per_quadrant; ++r2) {
                const LatticeCorner& c2 = rest_corners[r2];
                std::int64_t n = 0;
                for (int j = 0; j < d; ++j) {
                    const std::int64_t off = j < h ? 2 * w : 0;
                    const std::int64_t t = off + c2.coords[static_cast<std::size_t>(j)] -
                                           c1.coords[static_cast<std::size_t>(j)];
                    n += t * t;
                }
                ladder_set.insert(n);
            }
        }
    }
    const std::vector<std::int64_t> ladder(ladder_set.begin(), ladder_set.end());

    // all quadrant classes, largest unions first so infeasible caps fail fast
    struct ClassInfo {
        std::vector<int> rep;
        std::int64_t T;
        Rat64 max_gap_sq;  // largest pairwise quadrant gap
    };
    std::vector<ClassInfo> classes;
    for (int q = 2; q <= (1 << d); ++q) {
        for (auto& rep : canonical_quadrant_classes(d, q, opts.class_budget)) {
            ClassInfo ci;
            ci.T = static_cast<std::int64_t>(q) * static_cast<std::int64_t>(per_quadrant);
            ci.max_gap_sq = Rat64{0};
            for (std::size_t a = 0; a < rep.size(); ++a)
                for (std::size_t b = a + 1; b < rep.size(); ++b) {
                    const Rat64 gap = min_quadrant_distance(d, rep[a], rep[b]).value();
                    if (gap > ci.max_gap_sq) ci.max_gap_sq = gap;
                }
            ci.rep = std::move(rep);
            classes.push_back(std::move(ci));
        }
    }
    std::sort(classes.begin(), classes.end(),
              [](const ClassInfo& a, const ClassInfo& b) { return a.T > b.T; });

    if (k * d >= 62) throw EnumerationBudgetError("refine_lower_bound: 2^(kd) exceeds int64");
    const std::int64_t two_kd = static_cast<std::int64_t>(1) << (k * d);

    struct CapEntry {
        Rat64 cap;
        int matching = 0;
    };
    std::map<std::pair<std::size_t, std::int64_t>, CapEntry> cap_memo;
    auto class_cap = [&](std::size_t ci, std::int64_t thr_num) {
        const auto key = std::make_pair(ci, thr_num);
        auto it = cap_memo.find(key);
        if (it != cap_memo.end()) return it->second;
        const Rat64 thr{thr_num, nine_k};
        const RepulsiveGraph g = build_repulsive_graph(d, k, classes[ci].rep, thr, opts);
        const int m = max_matching(g).size;
        const CapEntry entry{Rat64{static_cast<std::int64_t>(g.vertices.size()) - m, two_kd}, m};
        cap_memo.emplace(key, entry);
        return entry;
    };

    bool improved = true;
    while (improved) {
        improved = false;
        // mu(B) >= L^s / H_d, both steps evaluated downward
        const double mu_min = div_directed(
            pow_directed(chain.final_sq, Exponent::half_dimension(d), Round::Down), H, Round::Down);

        for (std::size_t ti = ladder.size(); ti-- > 0;) {
            const Rat64 cand{ladder[ti], nine_k};
            if (cand <= chain.final_sq) break;

            bool acceptable = true;
            RefinementStep step;
            step.threshold_sq = cand;
            step.mu_min = mu_min;
            for (std::size_t ci = 0; ci < classes.size() && acceptable; ++ci) {
                const ClassInfo& info = classes[ci];
                if (!(info.max_gap_sq < cand)) continue;  // B cannot span this class
                // analytic cap floor: T / 2^(kd+1) even under a perfect matching
                const Rat64 floor{info.T, 2 * two_kd};
                if (!rat_less_double(floor, mu_min)) {
                    acceptable = false;
                    break;
                }
                const CapEntry entry = class_cap(ci, ladder[ti]);
                if (!rat_less_double(entry.cap, mu_min)) {
                    acceptable = false;
                    break;
                }
                step.assumed_classes.push_back(info.rep);
                step.matching_sizes.push_back(entry.matching);
                if (step.assumed_classes.size() == 1 || entry.cap > step.cap) step.cap = entry.cap;
            }
            if (acceptable) {
                step.new_bound_sq = cand;
                chain.steps.push_back(std::move(step));
                chain.final_sq = cand;
                improved = true;
                break;
            }
        }
    }

    chain.final_value = pow_directed(chain.final_sq, Exponent::half_dimension(d), Round::Down);
    chain.certified = true;
    return chain;
}

}  // namespace cantor
