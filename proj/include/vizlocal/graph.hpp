#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vizlocal/rng.hpp"

namespace vizlocal {

using VertexId = int;
using EdgeId = int;

// Immutable simple graph. Vertices are 0..n-1; edge ids are the ranks of the
// canonically sorted (u < v, lexicographic) edge list, so ids are stable and
// save/load round-trips are bit-exact.
class Graph {
public:
    Graph() = default;

    // Validates simplicity (no self-loops, no parallel edges) and sorts the
    // edge list canonically.
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    int max_degree() const { return max_degree_; }
    int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }

    const std::pair<int, int>& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<EdgeId>& incident(VertexId v) const { return adj_[v]; }

    VertexId other(EdgeId e, VertexId v) const {
        const auto& [a, b] = edges_[e];
        return a == v ? b : a;
    }

    // Edge id for (u, v), or -1.
    EdgeId find_edge(VertexId u, VertexId v) const;

private:
    int n_ = 0;
    int max_degree_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<EdgeId>> adj_;
};

// Generators. Deterministic for a fixed seed.
Graph generate_path(int n);
Graph generate_cycle(int n);
Graph generate_complete(int n);
Graph generate_gnp(int n, double p, std::uint64_t seed);
Graph generate_random_regular(int n, int d, std::uint64_t seed);
Graph generate_random_bipartite(int n1, int n2, double p, std::uint64_t seed);

// Parses a generator spec such as "gnp:50,0.1", "regular:16,4",
// "bipartite:10,12,0.3", "path:3", "cycle:6", "complete:4".
Graph generate_from_spec(const std::string& spec, std::uint64_t seed);

// Edge-list text format: header "n m", then one "u v" line per edge with
// 0 <= u < v < n. Canonical output is sorted, so save(load(t)) == t.
Graph load_edge_list(const std::string& text);
std::string save_edge_list(const Graph& g);

// Distance-k power graph: same vertex set, (u,v) an edge iff
// 1 <= dist_G(u,v) <= k. Distances are measured in G even when the result is
// restricted to an induced vertex subset. k must be 2 or 4.
Graph distance_power(const Graph& g, int k,
                     const std::vector<VertexId>* subset = nullptr);

// 2-colors the graph by BFS; returns per-vertex sides, or nullopt if an odd
// cycle exists.
std::optional<std::vector<int>> bipartition(const Graph& g);

}  // namespace vizlocal
