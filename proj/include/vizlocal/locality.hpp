#pragma once

#include <string>
#include <vector>

#include "vizlocal/graph.hpp"

namespace vizlocal {

// Iterated log2: number of times log2 must be applied to reach <= 1.
int log_star(double n);

// Symbolic LOCAL-round cost ledger. Primitives are computed centrally; each
// invocation charges the cost formula the corresponding distributed routine
// would pay, with all constants 1 and logs base 2. Entries aggregate per
// phase; totals are reproducible for a fixed seed and input.
class RoundLedger {
public:
    struct Phase {
        std::string name;
        std::string formula;
        double total = 0.0;
        long long count = 0;
    };

    void charge(const std::string& phase, const std::string& formula, double amount);
    double total() const;
    const std::vector<Phase>& phases() const { return phases_; }

private:
    std::vector<Phase> phases_;
};

// Proper coloring of the distance-k power such that equal colors are more
// than k hops apart. Greedy over vertex ids; throws ParameterError if limit
// colors do not suffice. Charges Delta^k + log* n.
struct HopColoring {
    std::vector<int> color;  // 1..num_colors on covered vertices, 0 elsewhere
    int hop_radius = 0;
    int num_colors = 0;
};
HopColoring hop_coloring(const Graph& g, int k, int limit, RoundLedger* ledger = nullptr,
                         const std::vector<VertexId>* subset = nullptr);

// Greedy maximal matching restricted to edge_subset (lowest edge id first).
// Every subset edge ends up with a matched endpoint. Charges Delta + log2 n.
std::vector<EdgeId> maximal_matching(const Graph& g, const std::vector<EdgeId>& edge_subset,
                                     RoundLedger* ledger = nullptr);

// Colors a functional conflict graph (out-degree <= 1, no self-arcs) with at
// most 3 colors via degeneracy-order greedy. arcs[i] is node i's out-neighbor
// or -1. Charges T * log2 n against the host graph size host_n.
std::vector<int> conflict_graph_coloring(const std::vector<int>& arcs,
                                         RoundLedger* ledger = nullptr,
                                         double truncation = 1.0, int host_n = 2);

}  // namespace vizlocal
