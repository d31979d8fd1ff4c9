#include "cantor/matching.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace cantor {

namespace {

// Blossom contraction is tracked through base[]; one BFS per exposed vertex.
class Blossom {
public:
    explicit Blossom(int n, const std::vector<std::pair<int, int>>& edges)
        : n_(n), adj_(static_cast<std::size_t>(n)) {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("max_matching: vertex out of range");
            if (u == v) continue;
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        match_.assign(static_cast<std::size_t>(n), -1);
    }

    std::vector<int> run() {
        // greedy warm start
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1)
                for (int to : adj_[static_cast<std::size_t>(v)])
                    if (match_[to] == -1) {
                        match_[v] = to;
                        match_[to] = v;
                        break;
                    }
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1) {
                const int u = find_path(v);
                if (u != -1) augment(u);
            }
        return match_;
    }

private:
    int lca(int a, int b) {
        std::vector<char> used(static_cast<std::size_t>(n_), 0);
        for (;;) {
            a = base_[a];
            used[static_cast<std::size_t>(a)] = 1;
            if (match_[a] == -1) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (used[static_cast<std::size_t>(b)]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = 1;
            blossom_[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    int find_path(int root) {
        parent_.assign(static_cast<std::size_t>(n_), -1);
        base_.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) base_[i] = i;
        std::vector<char> used(static_cast<std::size_t>(n_), 0);
        used[static_cast<std::size_t>(root)] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int to : adj_[static_cast<std::size_t>(v)]) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
                    // odd cycle: contract the blossom
                    const int b = lca(v, to);
                    blossom_.assign(static_cast<std::size_t>(n_), 0);
                    mark_path(v, b, to);
                    mark_path(to, b, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[base_[i]]) {
                            base_[i] = b;
                            if (!used[static_cast<std::size_t>(i)]) {
                                used[static_cast<std::size_t>(i)] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (match_[to] == -1) return to;
                    used[static_cast<std::size_t>(match_[to])] = 1;
                    q.push(match_[to]);
                }
            }
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            const int pv = parent_[v];
            const int ppv = match_[pv];
            match_[v] = pv;
            match_[pv] = v;
            v = ppv;
        }
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_;
    std::vector<int> parent_;
    std::vector<int> base_;
    std::vector<char> blossom_;
};

}  // namespace

MatchResult max_matching(int n, const std::vector<std::pair<int, int>>& edges) {
    Blossom algo(n, edges);
    const std::vector<int> match = algo.run();

    MatchResult res;
    for (int v = 0; v < n; ++v)
        if (match[static_cast<std::size_t>(v)] > v)
            res.pairs.emplace_back(v, match[static_cast<std::size_t>(v)]);
    res.size = static_cast<int>(res.pairs.size());

    // soundness check on every run: pairwise disjoint and all pairs are edges
    std::set<std::pair<int, int>> edge_set;
    for (auto [u, v] : edges) edge_set.insert(std::minmax(u, v));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : res.pairs) {
        if (seen[static_cast<std::size_t>(u)] || seen[static_cast<std::size_t>(v)])
            throw std::logic_error("max_matching: matched pairs share a vertex");
        seen[static_cast<std::size_t>(u)] = seen[static_cast<std::size_t>(v)] = 1;
        if (!edge_set.count({u, v}))
            throw std::logic_error("max_matching: matched pair is not an edge");
    }
    return res;
}

}  // namespace cantor
