#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "vizlocal/coloring.hpp"
#include "vizlocal/fan.hpp"
#include "vizlocal/graph.hpp"
#include "vizlocal/rng.hpp"

namespace oracles {

using namespace vizlocal;

// Vertices within distance k of src, by plain BFS.
inline std::set<VertexId> bfs_ball(const Graph& g, VertexId src, int k) {
    std::set<VertexId> seen{src};
    std::deque<std::pair<VertexId, int>> queue{{src, 0}};
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (d == k) continue;
        for (EdgeId e : g.incident(v)) {
            VertexId w = g.other(e, v);
            if (seen.insert(w).second) queue.emplace_back(w, d + 1);
        }
    }
    seen.erase(src);
    return seen;
}

// All-pairs adjacent-edge check of properness over a raw assignment.
inline std::set<std::pair<EdgeId, EdgeId>> pairwise_conflicts(const Graph& g,
                                                              const std::vector<int>& colors) {
    std::set<std::pair<EdgeId, EdgeId>> out;
    for (EdgeId a = 0; a < g.m(); ++a) {
        if (colors[a] < 1) continue;
        for (EdgeId b = a + 1; b < g.m(); ++b) {
            if (colors[b] != colors[a]) continue;
            auto [a1, a2] = g.edge(a);
            auto [b1, b2] = g.edge(b);
            if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) out.emplace(a, b);
        }
    }
    return out;
}

// Re-derives a vertex's missing set by scanning incident edges.
inline bool scan_missing(const Graph& g, const PartialColoring& col, VertexId v, int c) {
    for (EdgeId e : g.incident(v))
        if (col.color(e) == c) return false;
    return true;
}

inline int scan_m(const Graph& g, const PartialColoring& col, VertexId v) {
    if (int pin = col.pinned(v); pin != 0) return pin;
    for (int c = 1; c <= col.palette(); ++c)
        if (scan_missing(g, col, v, c)) return c;
    return 0;
}

// Step-by-step replay of the fan construction rules, written directly from
// the stopping conditions and independent of the library's bookkeeping.
inline std::vector<VertexId> replay_fan_leaves(const Graph& g, const PartialColoring& col,
                                               VertexId v, int alpha, EdgeId seed) {
    (void)alpha;
    std::vector<VertexId> leaves{g.other(seed, v)};
    std::vector<int> ms{scan_m(g, col, leaves.back())};
    for (;;) {
        int mi = ms.back();
        if (scan_missing(g, col, v, mi)) break;  // (i) closes
        bool repeat = false;
        for (std::size_t j = 0; j + 1 < ms.size(); ++j)
            if (ms[j] == mi) repeat = true;
        if (repeat) break;  // (ii) repeats
        EdgeId next = -1;
        for (EdgeId e : g.incident(v))
            if (col.color(e) == mi) next = e;
        if (next < 0) break;  // unreachable when (i) failed
        leaves.push_back(g.other(next, v));
        ms.push_back(scan_m(g, col, leaves.back()));
    }
    return leaves;
}

// Random graph with max degree capped by regenerating on violation.
inline Graph random_graph_max_degree(int n, double p, int max_delta, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Graph g = generate_gnp(n, p, seed + 7919 * attempt);
        if (g.max_degree() <= max_delta) return g;
    }
}

inline Graph random_bipartite_max_degree(int n1, int n2, double p, int max_delta,
                                         std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Graph g = generate_random_bipartite(n1, n2, p, seed + 104729 * attempt);
        if (g.max_degree() <= max_delta) return g;
    }
}

// Fills a coloring with random legal real colors at the given density.
inline void randomize_coloring(PartialColoring& col, RngStream& rng, double density) {
    const Graph& g = col.graph();
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (!rng.next_bernoulli(density)) continue;
        auto [u, v] = g.edge(e);
        std::vector<int> both;
        for (int c = 1; c <= col.palette(); ++c)
            if (col.is_missing(u, c) && col.is_missing(v, c)) both.push_back(c);
        if (!both.empty()) col.set_color(e, both[rng.next_below(both.size())]);
    }
}

// Every maximal alternating path for (a, b), one per endpoint pair.
inline std::vector<AlternatingPath> all_alternating_paths(const PartialColoring& col, int a,
                                                          int b) {
    const Graph& g = col.graph();
    std::vector<AlternatingPath> out;
    std::set<VertexId> consumed;
    for (VertexId v = 0; v < g.n(); ++v) {
        bool has_a = !col.is_missing(v, a);
        bool has_b = !col.is_missing(v, b);
        if (has_a == has_b) continue;  // interior or untouched
        if (consumed.count(v)) continue;
        AlternatingPath path = walk_alternating_path(col, v, a, b);
        consumed.insert(path.vertices.front());
        consumed.insert(path.vertices.back());
        if (path.length() > 0) out.push_back(std::move(path));
    }
    return out;
}

}  // namespace oracles
