#pragma once
// Cycle-relation generators of the quiver relations, enumerated independently of the reduction.

#include <algorithm>
#include <functional>

#include "pvac/quiver.hpp"

namespace quiver_relations {

using namespace pvac;
using Key = std::vector<std::pair<int, int>>;

// All loop-free quivers on n vertices whose underlying graph is a forest (no parallel edges).
inline std::vector<Key> oriented_forests(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    std::vector<Key> out;
    const int P = static_cast<int>(pairs.size());
    for (int mask = 0; mask < (1 << P); ++mask) {
        std::vector<std::pair<int, int>> es;
        for (int k = 0; k < P; ++k)
            if (mask & (1 << k)) es.push_back(pairs[k]);
        if (static_cast<int>(es.size()) > n - 1) continue;
        if (!is_acyclic(Quiver(n, es))) continue;
        const int E = static_cast<int>(es.size());
        for (int o = 0; o < (1 << E); ++o) {
            Key k;
            for (int r = 0; r < E; ++r)
                k.push_back((o >> r) & 1 ? std::make_pair(es[r].second, es[r].first) : es[r]);
            std::sort(k.begin(), k.end());
            out.push_back(k);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Relation generators of type (ii): a forest plus one edge closing a directed cycle (length >= 2).
inline std::vector<std::pair<Quiver, std::vector<int>>> directed_cycle_relations(int n) {
    std::vector<std::pair<Quiver, std::vector<int>>> out;
    for (auto& f : oriented_forests(n)) {
        Quiver base(n, f);
        // directed path b -> ... -> a in base, close with a -> b
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                std::vector<int> path_edges;
                std::function<bool(int, std::vector<char>&)> dfs = [&](int v, std::vector<char>& seen) {
                    if (v == a) return true;
                    for (auto& e : base.edges()) {
                        if (e.s != v || seen[e.t]) continue;
                        seen[e.t] = 1;
                        path_edges.push_back(e.id);
                        if (dfs(e.t, seen)) return true;
                        path_edges.pop_back();
                    }
                    return false;
                };
                std::vector<char> seen(n, 0);
                seen[b] = 1;
                if (!dfs(b, seen)) continue;
                Quiver g = base;
                int id = g.add_edge(a, b);
                path_edges.push_back(id);
                out.emplace_back(g, path_edges);
            }
    }
    return out;
}

inline LineCombination relation_image(const Quiver& g, const std::vector<int>& cyc) {
    LineCombination acc;
    for (int id : cyc)
        for (auto& [l, c] : reduce_to_lines(g.without_edge(id))) acc[l] += c;
    for (auto it = acc.begin(); it != acc.end();) it = sgn(it->second) == 0 ? acc.erase(it) : std::next(it);
    return acc;
}

}  // namespace quiver_relations
