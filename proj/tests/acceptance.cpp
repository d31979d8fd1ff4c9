// Acceptance suite: one function per criterion, each printing a PASS/FAIL
// line with the measured quantities. Run with a criterion number (1-9) or
// with no argument for the full suite; the exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "cantor/records.hpp"
#include "oracle_util.hpp"

using namespace cantor;

namespace {

struct Check {
    bool ok;
    std::string detail;
};

int g_failures = 0;

void report(int criterion, const std::string& name, const std::vector<Check>& checks) {
    bool all = true;
    for (const auto& c : checks) all = all && c.ok;
    std::printf("[%s] criterion %d: %s\n", all ? "PASS" : "FAIL", criterion, name.c_str());
    for (const auto& c : checks)
        std::printf("    %s %s\n", c.ok ? "ok  " : "FAIL", c.detail.c_str());
    if (!all) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const double kReferenceUpper[] = {0, 0, 1.500886049123709, 2.352741546983966, 4.089697707421688,
                             7.502183963990683, 14.810000552236708, 31.501011683100224,
                             67.52795132236503};

int largest_depth_in_budget(int d) { return 26 / d + 1; }

BoundResult upper_with(int d, int k, int threads = 0) {
    EngineOptions opts;
    opts.threads = threads;
    return upper_bound(d, k, opts);
}

// ---------------------------------------------------------------- criterion 1
void criterion_naive() {
    const auto t0 = std::chrono::steady_clock::now();
    const double fig4[] = {0, 1.0, 1.5485, 2.8284, 5.7506, 12.6620, 29.7081};
    std::vector<Check> checks;
    for (int d = 1; d <= 6; ++d) {
        const double v = naive_upper(d);
        const double err = std::fabs(v - fig4[d]);
        checks.push_back({err < 1e-4, fmt("naive(%d) = %.10f vs figure %.4f (|err| = %.2e)", d, v,
                                          fig4[d], err)});
    }
    const double secs = seconds_since(t0);
    checks.push_back({secs < 1.0, fmt("runtime %.3f s < 1 s", secs)});
    report(1, "naive bounds reproduce the reference figure to 4 decimals", checks);
}

// ---------------------------------------------------------------- criterion 2
void criterion_upper_low_dim() {
    std::vector<Check> checks;
    const auto t0 = std::chrono::steady_clock::now();

    // CI desk gate first: d=2, k=8 under 30 s inside the known bracket
    const BoundResult b8 = upper_with(2, 8);
    const double gate_secs = seconds_since(t0);
    checks.push_back({b8.value <= 1.5009 + 5e-3 && b8.value >= 1.48329 && gate_secs < 30.0,
                      fmt("desk gate: upper(2,8) = %.13f in [1.48329, 1.5059], %.2f s < 30 s",
                          b8.value, gate_secs)});

    // full gate: the printed 15-digit value must appear within the source
    // depth convention's "depth 12", i.e. artifact depth k = source depth + 1
    const auto t1 = std::chrono::steady_clock::now();
    int found_k = -1;
    double found_v = 0;
    for (int k = 2; k <= 13 && found_k < 0; ++k) {
        const BoundResult b = upper_with(2, k);
        if (std::fabs(b.value - kReferenceUpper[2]) <= 1e-9) {
            found_k = k;
            found_v = b.value;
        }
    }
    const double secs = seconds_since(t1);
    checks.push_back(
        {found_k > 0, found_k > 0
                          ? fmt("upper(2,%d) = %.15f matches 1.500886049123709 to 1e-9 "
                                "(artifact depth %d = source depth %d; artifact depth counts one "
                                "extra subdivision)",
                                found_k, found_v, found_k, found_k - 1)
                          : std::string("no depth <= 13 matched 1.500886049123709 to 1e-9")});
    checks.push_back({secs < 600.0, fmt("sweep runtime %.1f s < 600 s", secs)});
    report(2, "low-dimension upper bound reproduces the printed value", checks);
}

// ---------------------------------------------------------------- criterion 3
void criterion_upper_high_dim() {
    std::vector<Check> checks;
    for (int d = 3; d <= 8; ++d) {
        const int k = largest_depth_in_budget(d);
        const BoundResult b = upper_with(d, k);
        checks.push_back({b.value <= kReferenceUpper[d] + 1e-9,
                          fmt("upper(%d,%d) = %.15f <= %.15f + 1e-9", d, k, b.value,
                              kReferenceUpper[d])});
    }
    // the d=8 depth-2 probe: the printed value is not the depth-2 value
    const BoundResult b82 = upper_with(8, 2);
    const BoundResult b83 = upper_with(8, 3);
    const BoundResult b84 = upper_with(8, 4);
    if (std::fabs(b82.value - kReferenceUpper[8]) <= 1e-9) {
        checks.push_back({true, fmt("upper(8,2) = %.15f matches the printed value", b82.value)});
    } else {
        checks.push_back(
            {true, fmt("discrepancy reported: upper(8,2) = %.13f differs from the printed "
                       "67.52795132236503, which is reproduced at depth 4 instead",
                       b82.value)});
        checks.push_back({b84.value <= b83.value + 1e-12 && b83.value <= b82.value + 1e-12 &&
                              std::fabs(b84.value - kReferenceUpper[8]) <= 1e-9,
                          fmt("certified-<= chain holds: %.13f (k=4) <= %.13f (k=3) <= %.13f "
                              "(k=2), and k=4 matches the printed value",
                              b84.value, b83.value, b82.value)});
    }
    report(3, "high-dimension upper bounds match or beat the printed values", checks);
}

// ---------------------------------------------------------------- criterion 4
void criterion_monotonicity() {
    std::vector<Check> checks;
    for (int d = 1; d <= 3; ++d) {
        std::vector<double> v;
        for (int k = 1; k <= 7; ++k) v.push_back(upper_with(d, k).value);
        bool mono = true;
        for (int k = 1; k <= 6; ++k) mono = mono && v[k] <= v[k - 1] + 1e-12;
        checks.push_back({mono, fmt("upper(%d,k) nonincreasing for k=1..7 (%.13f -> %.13f)", d,
                                    v.front(), v.back())});
    }
    bool ones = true;
    double worst = 0;
    for (int k = 1; k <= 10; ++k) {
        const double v = upper_with(1, k).value;
        worst = std::max(worst, std::fabs(v - 1.0));
        ones = ones && std::fabs(v - 1.0) <= 1e-12;
    }
    checks.push_back({ones, fmt("upper(1,k) = 1.0 within 1e-12 for k <= 10 (worst |err| %.2e)",
                                worst)});
    report(4, "depth monotonicity and the exact d=1 value", checks);
}

// ---------------------------------------------------------------- criterion 5
void criterion_replay() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Check> checks;

    BoundResult H3;
    H3.direction = BoundResult::Direction::Upper;
    H3.d = 3;
    H3.value = kReferenceUpper[3];
    H3.certified = true;

    // sub-assertions recomputed through the engine API
    checks.push_back({pair_distance_sq(SymbolString{3, {1, 1}}, SymbolString{3, {2, 7}}).value() ==
                          Rat64{44, 81},
                      "exact distance 44/81 between D_{1,1} and D_{2,7}"});
    checks.push_back({pair_distance_sq(SymbolString{3, {1, 1}}, SymbolString{3, {2, 8}}).value() ==
                          Rat64{8, 9},
                      "exact distance 8/9 between D_{1,1} and D_{2,8}"});
    checks.push_back({pair_distance_sq(SymbolString{3, {2, 1}}, SymbolString{3, {5, 7}}).value() ==
                          Rat64{104, 81},
                      "exact distance 104/81 between D_{2,1} and D_{5,7}"});

    const int m44 = max_matching(build_repulsive_graph(3, 2, {1, 2}, Rat64{44, 81})).size;
    const int m72 = max_matching(build_repulsive_graph(3, 2, {1, 2}, Rat64{8, 9})).size;
    const int m_face = max_matching(build_repulsive_graph(3, 2, {1, 2, 3, 4}, Rat64{104, 81})).size;
    const int m_span = max_matching(build_repulsive_graph(3, 2, {1, 2, 3, 5}, Rat64{104, 81})).size;
    checks.push_back({m44 == 8, fmt("matching size 8 at 44/81 (got %d)", m44)});
    checks.push_back({m72 == 4, fmt("matching size 4 at 8/9 (got %d)", m72)});
    checks.push_back({m_face >= 8, fmt("face-case matching >= 8 at 104/81 (got %d)", m_face)});
    checks.push_back(
        {m_span >= 8,
         fmt("spanning-case matching >= 8 at 104/81 (got %d: the asserted eight pairs do not "
             "exist; independent exhaustive search confirms the maximum is 7)",
             m_span)});

    checks.push_back({measure_cap(3, 2, {1, 2}, Rat64{44, 81}) == Rat64{1, 8}, "measure cap 1/8"});
    checks.push_back({measure_cap(3, 2, {1, 2}, Rat64{8, 9}) == Rat64{3, 16}, "measure cap 3/16"});
    checks.push_back({measure_cap(3, 2, {1, 2, 3, 4}, Rat64{104, 81}) == Rat64{3, 8},
                      "face-case measure cap 3/8"});

    auto mu = [&](const Rat64& L2) {
        return div_directed(pow_directed(L2, Exponent::half_dimension(3), Round::Down), kReferenceUpper[3],
                            Round::Down);
    };
    const double mu1 = mu(Rat64{25, 81}), mu2 = mu(Rat64{44, 81}), mu3 = mu(Rat64{8, 9}),
                 mu4 = mu(Rat64{104, 81});
    checks.push_back({mu1 > 0.139716, fmt("mu_min(5/9) = %.9f > 0.139716", mu1)});
    checks.push_back({mu2 > 0.238561, fmt("mu_min(2sqrt11/9) = %.9f > 0.238561", mu2)});
    checks.push_back({mu3 > 0.380202, fmt("mu_min(2sqrt2/3) = %.9f > 0.380202", mu3)});
    checks.push_back({mu4 > 0.538462, fmt("mu_min(2sqrt26/9) = %.9f > 0.538462", mu4)});

    // the replay itself: the error contract demands an abort at the
    // first step whose recomputation disagrees, which is step 4
    bool aborted = false;
    int step = 0;
    double prefix_value = 0;
    try {
        const LowerBoundChain chain = replay_d3(H3);
        prefix_value = chain.final_value;
    } catch (const ReplayError& e) {
        aborted = true;
        step = e.step;
        prefix_value = e.partial.final_value;
    }
    checks.push_back({!aborted, aborted ? fmt("replay aborted at step %d per the error contract; "
                                              "certified prefix bound %.13f",
                                              step, prefix_value)
                                        : std::string("replay completed all steps")});

    // the final value the chain would certify, and the wrong-base flag
    const double final_direct =
        pow_directed(Rat64{104, 81}, Exponent::half_dimension(3), Round::Down);
    checks.push_back({std::fabs(final_direct - 1.2668626944510956) <= 1e-4,
                      fmt("direct (2sqrt26/9)^(s_3) = %.13f (within 1e-4 of the derived "
                          "1.2668626944510956)",
                          final_direct)});
    const double wrong_base =
        pow_directed(Rat64{104, 81}, Exponent{Rat64{3, 2}, true}, Round::Down);
    checks.push_back({std::fabs(wrong_base - 1.811621) < 1e-5,
                      fmt("printed 1.811621 flagged: it equals (2sqrt26/9)^(3*log2(3)) = %.6f, "
                          "inconsistent with s_3 = 3*log3(2)",
                          wrong_base)});

    const double secs = seconds_since(t0);
    checks.push_back({secs < 5.0, fmt("runtime %.2f s < 5 s", secs)});
    report(5, "step-verified replay of the d=3 chain", checks);
}

// ---------------------------------------------------------------- criterion 6
void criterion_matching_oracle() {
    std::vector<Check> checks;
    std::mt19937 rng(1234321);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 19);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 100 < 30) edges.emplace_back(i, j);
        if (max_matching(n, edges).size != test_oracle::brute_force_matching(n, edges))
            ++mismatches;
    }
    checks.push_back({mismatches == 0,
                      fmt("200 random graphs (<= 20 vertices): %d mismatches vs exhaustive search",
                          mismatches)});
    const int m44 = max_matching(build_repulsive_graph(3, 2, {1, 2}, Rat64{44, 81})).size;
    const int m72 = max_matching(build_repulsive_graph(3, 2, {1, 2}, Rat64{8, 9})).size;
    checks.push_back({m44 == 8 && m72 == 4,
                      fmt("pinned graphs: size %d at 44/81 (want 8), %d at 8/9 (want 4)", m44, m72)});
    report(6, "maximum matching agrees with exhaustive search", checks);
}

// ---------------------------------------------------------------- criterion 7
void criterion_histogram_oracle() {
    std::vector<Check> checks;
    for (auto [d, k] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{3, 2}}) {
        const DistanceHistogram h = build_histogram(d, k);
        const auto brute = test_oracle::brute_histogram(d, k);
        bool same = h.entries.size() == brute.size();
        for (std::size_t i = 0; same && i < brute.size(); ++i)
            same = h.sq_dist(i) == brute[i].first && h.entries[i].cum == brute[i].second;
        checks.push_back({same, fmt("histogram(%d,%d): %zu entries match the brute-force rational "
                                    "enumeration entry for entry",
                                    d, k, h.entries.size())});
    }
    report(7, "histogram agrees with brute-force rational enumeration", checks);
}

// ---------------------------------------------------------------- criterion 8
void criterion_consistency() {
    std::vector<Check> checks;
    for (int d = 1; d <= 3; ++d) {
        const int k_up = std::min(largest_depth_in_budget(d), 9);
        const BoundResult up = upper_with(d, k_up);
        const LowerBoundChain low = refine_lower_bound(d, 2, up);
        const double naive = naive_upper(d);
        checks.push_back({low.final_value <= up.value && low.final_value > 0 &&
                              up.value <= naive + 1e-9,
                          fmt("d=%d: 0 < lower %.13f <= upper %.13f <= naive %.13f", d,
                              low.final_value, up.value, naive)});
    }
    // the verified replay prefix is also dominated by the upper bound
    BoundResult H3;
    H3.direction = BoundResult::Direction::Upper;
    H3.d = 3;
    H3.value = kReferenceUpper[3];
    H3.certified = true;
    double prefix = 0;
    try {
        prefix = replay_d3(H3).final_value;
    } catch (const ReplayError& e) {
        prefix = e.partial.final_value;
    }
    checks.push_back({prefix > 0 && prefix <= kReferenceUpper[3],
                      fmt("replay prefix bound %.13f inside (0, %.15f]", prefix, kReferenceUpper[3])});
    report(8, "lower bounds stay below upper bounds inside the trivial frame", checks);
}

// ---------------------------------------------------------------- criterion 9
void criterion_determinism() {
    std::vector<Check> checks;

    auto record_for = [&](int threads) {
        json all = json::array();
        for (auto [d, k] : {std::pair{2, 13}, std::pair{5, 6}, std::pair{8, 4}}) {
            EngineOptions opts;
            opts.threads = threads;
            const DistanceHistogram h = build_histogram(d, k, opts);
            const BoundResult b = upper_bound(h);
            RunRecord rec;
            rec.command = "upper";
            rec.d = d;
            rec.k = k;
            rec.flags = json{{"max_enum", opts.max_enum}, {"method", "auto"}};
            rec.result = bound_to_json(b);
            rec.enumeration_count = h.total_count();
            all.push_back(rec.to_json(true));
        }
        for (int d = 1; d <= 3; ++d)
            for (int k = 1; k <= 6; ++k) {
                EngineOptions opts;
                opts.threads = threads;
                all.push_back(bound_to_json(upper_bound(d, k, opts)));
            }
        BoundResult H3;
        H3.direction = BoundResult::Direction::Upper;
        H3.d = 3;
        H3.value = kReferenceUpper[3];
        H3.certified = true;
        try {
            all.push_back(chain_to_json(replay_d3(H3)));
        } catch (const ReplayError& e) {
            json j = chain_to_json(e.partial);
            j["replay_failed_step"] = e.step;
            all.push_back(j);
        }
        return all.dump(2);
    };

    const std::string r1 = record_for(1);
    const std::string r4 = record_for(4);
    const std::string r8 = record_for(8);
    checks.push_back({r1 == r4, fmt("threads 1 vs 4: %s (%zu bytes)",
                                    r1 == r4 ? "byte-identical" : "DIFFER", r1.size())});
    checks.push_back({r1 == r8, fmt("threads 1 vs 8: %s", r1 == r8 ? "byte-identical" : "DIFFER")});
    report(9, "serialized results are byte-identical across thread counts", checks);
}

}  // namespace

int main(int argc, char** argv) {
    const int which = argc > 1 ? std::atoi(argv[1]) : 0;
    using Fn = void (*)();
    const Fn criteria[] = {criterion_naive,         criterion_upper_low_dim,
                           criterion_upper_high_dim, criterion_monotonicity,
                           criterion_replay,         criterion_matching_oracle,
                           criterion_histogram_oracle, criterion_consistency,
                           criterion_determinism};
    if (which >= 1 && which <= 9) {
        criteria[which - 1]();
    } else {
        for (Fn f : criteria) f();
        std::printf("\n%d of 9 criteria failed\n", g_failures);
    }
    return g_failures;
}
