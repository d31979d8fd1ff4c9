#include "cantor/histogram.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <thread>

namespace cantor {

namespace {

using KeyCount = std::pair<std::int64_t, std::int64_t>;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Merge two sorted (key, count) runs, summing counts on equal keys.
std::vector<KeyCount> merge_runs(const std::vector<KeyCount>& a, const std::vector<KeyCount>& b) {
    std::vector<KeyCount> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            out.push_back(a[i++]);
        else if (b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

std::vector<KeyCount> compress_sorted(std::vector<std::int64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    std::vector<KeyCount> out;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        out.emplace_back(keys[i], static_cast<std::int64_t>(j - i));
        i = j;
    }
    return out;
}

// Direct enumeration over the corner stream: each worker owns a contiguous
// index range, locally sorts and compresses, then runs are merged.
std::vector<KeyCount> direct_runs(const RestrictedCornerStream& stream, int threads) {
    const std::uint64_t n = stream.size();
    const int t = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(n, 64))));
    std::vector<std::vector<KeyCount>> partial(static_cast<std::size_t>(t));

    auto work = [&](int w) {
        const std::uint64_t begin = n * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(t);
        const std::uint64_t end = n * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(t);
        std::vector<KeyCount> acc;
        std::vector<std::int64_t> buf;
        constexpr std::uint64_t kChunk = 1ull << 21;
        for (std::uint64_t lo = begin; lo < end; lo += kChunk) {
            const std::uint64_t hi = std::min(end, lo + kChunk);
            buf.clear();
            buf.reserve(static_cast<std::size_t>(hi - lo));
            for (std::uint64_t i = lo; i < hi; ++i) buf.push_back(stream.center_sq_numerator(i));
            auto run = compress_sorted(buf);
            acc = acc.empty() ? std::move(run) : merge_runs(acc, run);
        }
        partial[static_cast<std::size_t>(w)] = std::move(acc);
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < t; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();

    std::vector<KeyCount> acc;
    for (auto& p : partial) acc = acc.empty() ? std::move(p) : merge_runs(acc, p);
    return acc;
}

// d-fold convolution of the per-axis squared-distance multiset. Axis keys are
// distinct, so each fold is an |axis|-way merge of shifted copies of the
// running multiset; the result is identical to direct enumeration.
std::vector<KeyCount> convolve_runs(const RestrictedCornerStream& stream, int threads) {
    std::vector<std::int64_t> axis = stream.axis_center_sq();
    std::sort(axis.begin(), axis.end());

    std::vector<KeyCount> acc;
    acc.reserve(axis.size());
    for (std::int64_t a : axis) acc.emplace_back(a, 1);

    for (int fold = 1; fold < stream.dim(); ++fold) {
        const int t = std::max(1, std::min<int>(threads, static_cast<int>(axis.size())));
        std::vector<std::vector<KeyCount>> partial(static_cast<std::size_t>(t));

        auto work = [&](int w) {
            const std::size_t alo = axis.size() * static_cast<std::size_t>(w) / static_cast<std::size_t>(t);
            const std::size_t ahi = axis.size() * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(t);
            if (alo == ahi) return;
            // (shift, position) min-heap over the axis slice
            using HeapItem = std::pair<std::int64_t, std::size_t>;  // (key, slice idx)
            std::vector<std::size_t> pos(ahi - alo, 0);
            auto cmp = [](const HeapItem& x, const HeapItem& y) { return x.first > y.first; };
            std::priority_queue<HeapItem, std::vector<HeapItem>, decltype(cmp)> heap(cmp);
            for (std::size_t s = alo; s < ahi; ++s)
                heap.emplace(acc[0].first + axis[s], s - alo);
            std::vector<KeyCount> out;
            while (!heap.empty()) {
                auto [key, s] = heap.top();
                heap.pop();
                const std::int64_t cnt = acc[pos[s]].second;
                if (!out.empty() && out.back().first == key)
                    out.back().second += cnt;
                else
                    out.emplace_back(key, cnt);
                if (++pos[s] < acc.size()) heap.emplace(acc[pos[s]].first + axis[s + alo], s);
            }
            partial[static_cast<std::size_t>(w)] = std::move(out);
        };

        std::vector<std::thread> pool;
        for (int w = 1; w < t; ++w) pool.emplace_back(work, w);
        work(0);
        for (auto& th : pool) th.join();

        std::vector<KeyCount> next;
        for (auto& p : partial) next = next.empty() ? std::move(p) : merge_runs(next, p);
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

DistanceHistogram build_histogram(int d, int k, const EngineOptions& opts) {
    const RestrictedCornerStream stream(d, k, opts.max_enum);
    const int threads = resolve_threads(opts.threads);

    const bool convolve = opts.method == HistMethod::Convolve ||
                          (opts.method == HistMethod::Auto && d >= 2);
    std::vector<KeyCount> runs =
        convolve ? convolve_runs(stream, threads) : direct_runs(stream, threads);

    DistanceHistogram hist;
    hist.d = d;
    hist.k = k;
    hist.entries.reserve(runs.size());
    std::int64_t cum = 0;
    for (const auto& [key, count] : runs) {
        cum += count;
        hist.entries.push_back(HistEntry{key, cum});
    }
    assert(hist.total_count() == stream.size());
    return hist;
}

BoundResult upper_bound(const DistanceHistogram& hist) {
    const int d = hist.d;
    const int k = hist.k;
    const std::int64_t p3k = pow3(k);
    const std::int64_t nine_k = p3k * p3k;

    // Feasible ball diameters: 1/3 <= 2r <= sqrt(d), i.e.
    // 9^(k-1) <= sq_num <= d*9^k in diameter-squared numerator units.
    const std::int64_t lo_num = nine_k / 9;
    const std::int64_t hi_num = static_cast<std::int64_t>(d) * nine_k;

    // Cheap pass: pick the argmin of log(value) in long double. Any entry is a
    // certified upper bound, so approximation here only affects tightness; the
    // chosen candidates are then evaluated with directed rounding.
    const long double s_half = static_cast<long double>(dimension(d)) / 2.0L;
    const long double log_nine_k = std::log(static_cast<long double>(nine_k));
    const long double kd_log2 = static_cast<long double>((k - 1) * d) * 0.69314718055994530942L;

    long double best_log = 0;
    std::size_t best_idx = SIZE_MAX;
    for (std::size_t i = 0; i < hist.entries.size(); ++i) {
        const auto& e = hist.entries[i];
        if (e.sq_num < lo_num || e.sq_num > hi_num) continue;
        // log of (sq/9^k)^(s/2) / (cum / 2^((k-1)d))
        const long double v = s_half * (std::log(static_cast<long double>(e.sq_num)) - log_nine_k) -
                              std::log(static_cast<long double>(e.cum)) + kd_log2;
        if (best_idx == SIZE_MAX || v < best_log) {
            best_log = v;
            best_idx = i;
        }
    }
    if (best_idx == SIZE_MAX)
        throw std::logic_error("upper_bound: no feasible radius candidate");

    // Directed evaluation on a small window around the approximate argmin.
    BoundResult res;
    res.direction = BoundResult::Direction::Upper;
    res.d = d;
    res.k = k;
    res.certified = true;
    double best = 0;
    bool first = true;
    const std::size_t w0 = best_idx >= 2 ? best_idx - 2 : 0;
    const std::size_t w1 = std::min(hist.entries.size(), best_idx + 3);
    for (std::size_t i = w0; i < w1; ++i) {
        const auto& e = hist.entries[i];
        if (e.sq_num < lo_num || e.sq_num > hi_num) continue;
        const Rat64 diam_sq{e.sq_num, nine_k};
        const Rat64 mu{e.cum, static_cast<std::int64_t>(1) << ((k - 1) * d)};
        const double pow_up = pow_directed(diam_sq, Exponent::half_dimension(d), Round::Up);
        const double val = div_directed(pow_up, mu, Round::Up);
        if (first || val < best) {
            best = val;
            first = false;
            res.witness = UpperWitness{diam_sq, (static_cast<std::int64_t>(1) << d) * e.cum, mu};
        }
    }
    res.value = best;
    res.rounding_budget = 2 * kEvalRelBudget;
    return res;
}

BoundResult upper_bound(int d, int k, const EngineOptions& opts) {
    return upper_bound(build_histogram(d, k, opts));
}

}  // namespace cantor
