#include "vizlocal/locality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "vizlocal/error.hpp"

namespace vizlocal {

int log_star(double n) {
    int iterations = 0;
    while (n > 1.0) {
        n = std::log2(n);
        ++iterations;
    }
    return iterations;
}

void RoundLedger::charge(const std::string& phase, const std::string& formula,
                         double amount) {
    for (Phase& p : phases_) {
        if (p.name == phase) {
            p.total += amount;
            ++p.count;
            return;
        }
    }
    phases_.push_back({phase, formula, amount, 1});
}

double RoundLedger::total() const {
    double sum = 0.0;
    for (const Phase& p : phases_) sum += p.total;
    return sum;
}

HopColoring hop_coloring(const Graph& g, int k, int limit, RoundLedger* ledger,
                         const std::vector<VertexId>* subset) {
    if (k != 1 && k != 2 && k != 4) throw ParameterError("hop radius must be 1, 2 or 4");
    const Graph* neighborhood = &g;
    Graph power;
    if (k > 1) {
        power = distance_power(g, k, subset);
        neighborhood = &power;
    }
    HopColoring out;
    out.hop_radius = k;
    out.color.assign(g.n(), 0);
    std::vector<char> covered(g.n(), subset ? 0 : 1);
    if (subset)
        for (VertexId v : *subset) covered[v] = 1;
    std::vector<char> used(limit + 2, 0);
    for (VertexId v = 0; v < g.n(); ++v) {
        if (!covered[v]) continue;
        for (EdgeId e : neighborhood->incident(v)) {
            int c = out.color[neighborhood->other(e, v)];
            if (c > 0) used[c] = 1;
        }
        int chosen = 0;
        for (int c = 1; c <= limit; ++c) {
            if (!used[c]) {
                chosen = c;
                break;
            }
        }
        for (EdgeId e : neighborhood->incident(v)) {
            int c = out.color[neighborhood->other(e, v)];
            if (c > 0) used[c] = 0;
        }
        if (chosen == 0)
            throw ParameterError("hop coloring limit " + std::to_string(limit) +
                                 " too small");
        out.color[v] = chosen;
        out.num_colors = std::max(out.num_colors, chosen);
    }
    if (ledger) {
        double delta = g.max_degree();
        ledger->charge("hop" + std::to_string(k), "Delta^" + std::to_string(k) + " + log* n",
                       std::pow(delta, k) + log_star(g.n()));
    }
    return out;
}

std::vector<EdgeId> maximal_matching(const Graph& g, const std::vector<EdgeId>& edge_subset,
                                     RoundLedger* ledger) {
    std::vector<EdgeId> sorted = edge_subset;
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> matched(g.n(), 0);
    std::vector<EdgeId> out;
    for (EdgeId e : sorted) {
        auto [u, v] = g.edge(e);
        if (!matched[u] && !matched[v]) {
            matched[u] = matched[v] = 1;
            out.push_back(e);
        }
    }
    if (ledger)
        ledger->charge("matching", "Delta + log2 n",
                       g.max_degree() + std::log2(std::max(2, g.n())));
    return out;
}

std::vector<int> conflict_graph_coloring(const std::vector<int>& arcs, RoundLedger* ledger,
                                         double truncation, int host_n) {
    const int n = static_cast<int>(arcs.size());
    std::vector<std::vector<int>> adj(n);
    for (int u = 0; u < n; ++u) {
        int w = arcs[u];
        if (w < 0) continue;
        if (w >= n) throw StructureError("conflict arc out of range");
        if (w == u) throw StructureError("conflict arc to self");
        adj[u].push_back(w);
        adj[w].push_back(u);
    }
    // A functional graph is 2-degenerate: peel min-degree nodes, color in
    // reverse with the lowest of three colors. Bucket queue with lazy entries.
    std::vector<int> degree(n);
    int max_deg = 0;
    for (int u = 0; u < n; ++u) {
        degree[u] = static_cast<int>(adj[u].size());
        max_deg = std::max(max_deg, degree[u]);
    }
    std::vector<std::vector<int>> buckets(max_deg + 1);
    for (int u = 0; u < n; ++u) buckets[degree[u]].push_back(u);
    std::vector<char> removed(n, 0);
    std::vector<int> order;
    order.reserve(n);
    int cursor = 0;
    while (static_cast<int>(order.size()) < n) {
        while (cursor <= max_deg && buckets[cursor].empty()) ++cursor;
        int u = buckets[cursor].back();
        buckets[cursor].pop_back();
        if (removed[u] || degree[u] != cursor) continue;  // stale entry
        removed[u] = 1;
        order.push_back(u);
        for (int w : adj[u]) {
            if (!removed[w]) {
                --degree[w];
                buckets[degree[w]].push_back(w);
                cursor = std::min(cursor, degree[w]);
            }
        }
    }
    std::vector<int> color(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int u = *it;
        bool used[4] = {false, false, false, false};
        for (int w : adj[u])
            if (color[w] >= 1 && color[w] <= 3) used[color[w]] = true;
        int chosen = 0;
        for (int c = 1; c <= 3; ++c) {
            if (!used[c]) {
                chosen = c;
                break;
            }
        }
        if (chosen == 0)
            throw StructureError("conflict graph needed a fourth color");
        color[u] = chosen;
    }
    if (ledger)
        ledger->charge("conflict_color", "T log2 n",
                       truncation * std::log2(std::max(2, host_n)));
    return color;
}

}  // namespace vizlocal
