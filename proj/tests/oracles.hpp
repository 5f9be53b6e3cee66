#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they cross-check.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracles {

using GLPartition = std::vector<int>;  // weakly decreasing, >= 0 entries allowed

// Littlewood-Richardson product s_lambda * s_mu over GL(rows) partitions,
// by direct enumeration of LR skew tableaux: fillings of nu/lambda with
// content mu, weakly increasing rows, strictly increasing columns, whose
// reverse reading word is a lattice word.
inline std::map<GLPartition, long> lr_product(const GLPartition &lambda, const GLPartition &mu,
                                              int rows) {
    const int total = std::accumulate(lambda.begin(), lambda.end(), 0) +
                      std::accumulate(mu.begin(), mu.end(), 0);

    // Candidate outer shapes: partitions of |lambda| + |mu| with at most
    // `rows` rows containing lambda.
    std::vector<GLPartition> shapes;
    GLPartition shape;
    auto enumerate = [&](auto &&self, int remaining, int cap) -> void {
        if (static_cast<int>(shape.size()) > rows) return;
        if (remaining == 0) {
            GLPartition padded = shape;
            padded.resize(rows, 0);
            bool contains = true;
            for (int r = 0; r < rows; ++r) {
                int lam = r < static_cast<int>(lambda.size()) ? lambda[r] : 0;
                if (padded[r] < lam) contains = false;
            }
            if (contains) shapes.push_back(padded);
            return;
        }
        if (static_cast<int>(shape.size()) == rows) return;
        for (int v = std::min(cap, remaining); v >= 1; --v) {
            shape.push_back(v);
            self(self, remaining - v, v);
            shape.pop_back();
        }
    };
    enumerate(enumerate, total, total);

    std::map<GLPartition, long> result;
    const int k = static_cast<int>(mu.size());
    for (const GLPartition &nu : shapes) {
        // Cells of nu/lambda in reverse reading order: rows top to bottom,
        // right to left inside each row.  Filling in this order lets the
        // lattice property be checked prefix by prefix.
        std::vector<std::pair<int, int>> cells;
        for (int r = 0; r < rows; ++r) {
            int lam = r < static_cast<int>(lambda.size()) ? lambda[r] : 0;
            for (int c = nu[r] - 1; c >= lam; --c) cells.push_back({r, c});
        }
        std::map<std::pair<int, int>, int> fill;
        std::vector<int> used(k + 1, 0);
        long count = 0;
        auto dfs = [&](auto &&self, std::size_t idx) -> void {
            if (idx == cells.size()) {
                ++count;
                return;
            }
            auto [r, c] = cells[idx];
            for (int v = 1; v <= k; ++v) {
                if (used[v] >= mu[v - 1]) continue;
                if (v >= 2 && used[v] >= used[v - 1]) continue;  // lattice word
                auto right = fill.find({r, c + 1});
                if (right != fill.end() && v > right->second) continue;  // weak rows
                auto above = fill.find({r - 1, c});
                if (r > 0) {
                    int lam_above = r - 1 < static_cast<int>(lambda.size()) ? lambda[r - 1] : 0;
                    if (c >= nu[r - 1]) continue;  // no cell above at all
                    if (c >= lam_above) {
                        if (above == fill.end()) continue;  // filled later: impossible order
                        if (v <= above->second) continue;   // strict columns
                    }
                }
                fill[{r, c}] = v;
                ++used[v];
                self(self, idx + 1);
                --used[v];
                fill.erase({r, c});
            }
        };
        dfs(dfs, 0);
        if (count > 0) {
            GLPartition key = nu;
            while (!key.empty() && key.back() == 0) key.pop_back();
            result[key] += count;
        }
    }
    return result;
}

// Dominant sl_{n+1} weight -> GL(n+1) partition (last entry zero).
inline GLPartition gl_partition(const std::vector<int> &weight) {
    const int n = static_cast<int>(weight.size());
    GLPartition p(n + 1, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) p[j] += weight[i];
    return p;
}

// GL(n+1) partition -> dominant sl_{n+1} weight.
inline std::vector<int> sl_weight(const GLPartition &p, int n) {
    GLPartition padded = p;
    padded.resize(n + 1, 0);
    std::vector<int> w(n, 0);
    for (int i = 0; i < n; ++i) w[i] = padded[i] - padded[i + 1];
    return w;
}

// Reflexive-transitive relation as adjacency sets, and the transitive
// reduction computed the brute-force way.
template <typename T>
std::set<std::pair<T, T>> transitive_reduction(const std::vector<T> &elems,
                                               bool (*leq)(const T &, const T &)) {
    std::set<std::pair<T, T>> edges;
    for (const T &a : elems)
        for (const T &b : elems) {
            if (a == b || !leq(a, b)) continue;
            bool direct = true;
            for (const T &c : elems) {
                if (c == a || c == b) continue;
                if (leq(a, c) && leq(c, b)) {
                    direct = false;
                    break;
                }
            }
            if (direct) edges.insert({a, b});
        }
    return edges;
}

// Partition counting by the standard two-variable recurrence; used to check
// enumeration sizes.
inline long partition_count(int m, int max_part) {
    if (m == 0) return 1;
    if (m < 0 || max_part == 0) return 0;
    return partition_count(m - max_part, max_part) + partition_count(m, max_part - 1);
}

inline long partition_count(int m) { return partition_count(m, m); }

}  // namespace oracles
