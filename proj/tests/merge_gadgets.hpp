#pragma once

// Constructed merge scenarios shared by the unit suite and the acceptance
// suite: two normal fans meeting at a shared last leaf x (which turns into a
// reverse fan there), optionally extended by a chain of fans meeting that
// reverse fan at its center.
//
// Layout: v=0 and w=1 are the fan centers, x=2 the shared leaf, 3 is x's
// alpha partner; then v's pendant leaves a_1..a_{p-1}, w's b_1..b_{q-1}, and
// the chain centers. Pins steer each growth so the fans close exactly at x.

#include <utility>
#include <vector>

#include "vizlocal/engine.hpp"
#include "vizlocal/error.hpp"
#include "vizlocal/fan.hpp"

namespace gadgets {

using namespace vizlocal;

struct MergeScenario {
    int p, q, chain;
    Graph g;
    PartialColoring col;
    VertexId v = 0;
    VertexId w = 1;
    VertexId x = 2;
    int alpha = 1;
    std::vector<VertexId> chain_centers;

    MergeScenario(int p_, int q_, int chain_, int slack)
        : p(p_), q(q_), chain(chain_), g(build(p, q, chain)),
          col(g, p + q + 3 + slack) {
        col.set_color(g.find_edge(x, 3), alpha);
        // v's fan edges carry colors 3..p+1, w's carry p+3..p+q+1
        for (int i = 2; i <= p; ++i) {
            VertexId leaf = (i == p) ? x : a(i);
            col.set_color(g.find_edge(v, leaf), i + 1);
        }
        for (int j = 2; j <= q; ++j) {
            VertexId leaf = (j == q) ? x : b(j);
            col.set_color(g.find_edge(w, leaf), p + j + 1);
        }
        for (int i = 1; i < p; ++i) col.pin_missing_color(a(i), i + 2);
        for (int j = 1; j < q; ++j) col.pin_missing_color(b(j), p + j + 2);
        col.pin_missing_color(x, p + q + 2);  // closes both growths at x
    }

    VertexId a(int i) const { return 3 + i; }                 // i in 1..p-1
    VertexId b(int j) const { return 3 + (p - 1) + j; }       // j in 1..q-1
    VertexId z(int c) const { return 3 + (p - 1) + (q - 1) + c; }  // c in 1..chain

    static Graph build(int p, int q, int chain) {
        std::vector<std::pair<int, int>> edges{{2, 3}, {0, 2}, {1, 2}};
        int vertex = 4;
        for (int i = 1; i < p; ++i) edges.emplace_back(0, vertex++);
        for (int j = 1; j < q; ++j) edges.emplace_back(1, vertex++);
        for (int c = 0; c < chain; ++c) edges.emplace_back(2, vertex++);
        return Graph::from_edges(vertex, edges);
    }

    NormalFan grow_v() {
        EdgeId seed = p > 1 ? g.find_edge(v, a(1)) : g.find_edge(v, x);
        return grow_normal_fan(col, v, alpha, seed);
    }
    NormalFan grow_w() {
        EdgeId seed = q > 1 ? g.find_edge(w, b(1)) : g.find_edge(w, x);
        return grow_normal_fan(col, w, alpha, seed);
    }

    // Grows and merges: w's fan first (becomes active), then v's (collides at
    // x), then one chain fan per merge call.
    FanSet run() {
        FanSet active;
        merge_fans(col, active, {grow_w()});
        merge_fans(col, active, {grow_v()});
        for (int c = 1; c <= chain; ++c) {
            chain_centers.push_back(z(c));
            NormalFan fz = grow_normal_fan(col, z(c), alpha, g.find_edge(z(c), x));
            merge_fans(col, active, {fz});
        }
        return active;
    }
};

inline void check_disjoint_and_counted(const MergeScenario& sc, const FanSet& active,
                                       int uncolored_before) {
    if (sc.col.uncolored_count() != uncolored_before)
        throw VerificationError("merge changed the number of uncolored edges");
    std::vector<char> seen(sc.g.n(), 0);
    auto claim = [&](VertexId v) {
        if (seen[v]) throw VerificationError("active fans intersect");
        seen[v] = 1;
    };
    for (std::size_t i = 0; i < active.normals.size(); ++i) {
        if (!active.normal_active[i]) continue;
        claim(active.normals[i].center);
        for (VertexId x : active.normals[i].leaves) claim(x);
    }
    for (const ReverseFan& r : active.reverses) {
        claim(r.center);
        if (sc.col.is_missing(r.center, r.alpha))
            throw VerificationError("reverse center misses alpha");
        for (std::size_t l = 0; l < r.leaves.size(); ++l) {
            claim(r.leaves[l]);
            if (!sc.col.is_missing(r.leaves[l], r.alpha))
                throw VerificationError("reverse leaf has alpha");
            if (sc.col.color(r.edges[l]) != kUncolored)
                throw VerificationError("reverse edge is colored");
        }
    }
    if (!sc.col.verify_proper().empty())
        throw VerificationError("merge left an improper coloring");
}

}  // namespace gadgets
