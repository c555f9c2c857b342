#include "vizlocal/graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>

#include "vizlocal/error.hpp"

namespace vizlocal {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw ParameterError("vertex count must be non-negative");
    for (auto& [u, v] : edges) {
        if (u == v) throw ParameterError("self-loop " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParameterError("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i] == edges[i - 1])
            throw ParameterError("parallel edge " + std::to_string(edges[i].first) +
                                 "-" + std::to_string(edges[i].second));
    }
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adj_.assign(n, {});
    for (EdgeId e = 0; e < g.m(); ++e) {
        g.adj_[g.edges_[e].first].push_back(e);
        g.adj_[g.edges_[e].second].push_back(e);
    }
    for (int v = 0; v < n; ++v)
        g.max_degree_ = std::max(g.max_degree_, g.degree(v));
    return g;
}

EdgeId Graph::find_edge(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it != edges_.end() && *it == std::make_pair(u, v))
        return static_cast<EdgeId>(it - edges_.begin());
    return -1;
}

Graph generate_path(int n) {
    if (n < 1) throw ParameterError("path needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::move(e));
}

Graph generate_cycle(int n) {
    if (n < 3) throw ParameterError("cycle needs n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(0, n - 1);
    return Graph::from_edges(n, std::move(e));
}

Graph generate_complete(int n) {
    if (n < 1) throw ParameterError("complete needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edges(n, std::move(e));
}

Graph generate_gnp(int n, double p, std::uint64_t seed) {
    if (n < 0 || p < 0.0 || p > 1.0) throw ParameterError("gnp needs n >= 0 and 0 <= p <= 1");
    RngStream rng = RngStream(seed).derive(kRngGraphGen);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_bernoulli(p)) e.emplace_back(u, v);
    return Graph::from_edges(n, std::move(e));
}

Graph generate_random_regular(int n, int d, std::uint64_t seed) {
    if (n <= 0 || d < 0 || d >= n) throw ParameterError("regular needs 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw ParameterError("regular needs n*d even");
    RngStream rng = RngStream(seed).derive(kRngGraphGen, 1);
    if (d == 0) return Graph::from_edges(n, {});

    // Configuration model with double-swap repair of self-loops/duplicates.
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i) stubs.push_back(v);
    for (int attempt = 0; attempt < 200; ++attempt) {
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng.next_below(i)]);
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(stubs.size() / 2);
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
            pairs.emplace_back(stubs[i], stubs[i + 1]);

        auto count_multi = [&] {
            std::vector<std::pair<int, int>> sorted;
            sorted.reserve(pairs.size());
            for (auto [u, v] : pairs) sorted.emplace_back(std::min(u, v), std::max(u, v));
            std::sort(sorted.begin(), sorted.end());
            return sorted;
        };
        bool ok = false;
        for (int round = 0; round < 20000; ++round) {
            int bad = -1;
            auto sorted = count_multi();
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                auto [u, v] = pairs[i];
                if (u == v) { bad = static_cast<int>(i); break; }
                auto key = std::make_pair(std::min(u, v), std::max(u, v));
                auto lo = std::lower_bound(sorted.begin(), sorted.end(), key);
                auto hi = std::upper_bound(sorted.begin(), sorted.end(), key);
                if (hi - lo > 1) { bad = static_cast<int>(i); break; }
            }
            if (bad < 0) { ok = true; break; }
            // swap the bad pair's second endpoint with a random pair's second
            std::size_t j = rng.next_below(pairs.size());
            if (j != static_cast<std::size_t>(bad))
                std::swap(pairs[bad].second, pairs[j].second);
        }
        if (!ok) continue;
        std::vector<std::pair<int, int>> e(pairs.begin(), pairs.end());
        return Graph::from_edges(n, std::move(e));
    }
    throw ParameterError("random regular generation did not converge");
}

Graph generate_random_bipartite(int n1, int n2, double p, std::uint64_t seed) {
    if (n1 < 0 || n2 < 0 || p < 0.0 || p > 1.0)
        throw ParameterError("bipartite needs n1, n2 >= 0 and 0 <= p <= 1");
    RngStream rng = RngStream(seed).derive(kRngGraphGen, 2);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v)
            if (rng.next_bernoulli(p)) e.emplace_back(u, n1 + v);
    return Graph::from_edges(n1 + n2, std::move(e));
}

Graph generate_from_spec(const std::string& spec, std::uint64_t seed) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParameterError("generator spec needs kind:args");
    std::string kind = spec.substr(0, colon);
    std::vector<std::string> args;
    {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) args.push_back(tok);
    }
    auto as_int = [&](std::size_t i) {
        try {
            return std::stoi(args.at(i));
        } catch (const std::exception&) {
            throw ParameterError("bad integer in generator spec: " + spec);
        }
    };
    auto as_double = [&](std::size_t i) {
        try {
            return std::stod(args.at(i));
        } catch (const std::exception&) {
            throw ParameterError("bad number in generator spec: " + spec);
        }
    };
    if (kind == "path" && args.size() == 1) return generate_path(as_int(0));
    if (kind == "cycle" && args.size() == 1) return generate_cycle(as_int(0));
    if (kind == "complete" && args.size() == 1) return generate_complete(as_int(0));
    if (kind == "gnp" && args.size() == 2) return generate_gnp(as_int(0), as_double(1), seed);
    if (kind == "regular" && args.size() == 2)
        return generate_random_regular(as_int(0), as_int(1), seed);
    if (kind == "bipartite" && args.size() == 3)
        return generate_random_bipartite(as_int(0), as_int(1), as_double(2), seed);
    throw ParameterError("unknown generator spec: " + spec);
}

Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) -> FormatError {
        return FormatError("line " + std::to_string(lineno) + ": " + what);
    };
    int n = -1;
    long long m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (!(ls >> n >> m) || n < 0 || m < 0) throw fail("expected header \"n m\"");
        break;
    }
    if (n < 0) throw FormatError("line 0: empty input, expected header \"n m\"");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw fail("expected edge \"u v\"");
        if (u < 0 || v < 0 || u >= n || v >= n) throw fail("vertex out of range");
        if (u == v) throw fail("self-loop");
        if (u > v) throw fail("expected u < v");
        edges.emplace_back(u, v);
    }
    if (static_cast<long long>(edges.size()) != m)
        throw FormatError("edge count mismatch: header says " + std::to_string(m) +
                          ", got " + std::to_string(edges.size()));
    std::vector<std::pair<int, int>> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw FormatError("duplicate edge " + std::to_string(sorted[i].first) + " " +
                              std::to_string(sorted[i].second));
    return Graph::from_edges(n, std::move(edges));
}

std::string save_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.m() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph distance_power(const Graph& g, int k, const std::vector<VertexId>* subset) {
    if (k != 2 && k != 4) throw ParameterError("distance power needs k in {2, 4}");
    std::vector<char> in_subset;
    if (subset) {
        in_subset.assign(g.n(), 0);
        for (VertexId v : *subset) in_subset[v] = 1;
    }
    auto included = [&](VertexId v) { return !subset || in_subset[v]; };

    std::vector<std::pair<int, int>> power_edges;
    std::vector<int> dist(g.n(), -1);
    std::vector<VertexId> touched;
    for (VertexId src = 0; src < g.n(); ++src) {
        if (!included(src)) continue;
        dist[src] = 0;
        touched.assign(1, src);
        std::deque<VertexId> queue{src};
        while (!queue.empty()) {
            VertexId u = queue.front();
            queue.pop_front();
            if (dist[u] == k) continue;
            for (EdgeId e : g.incident(u)) {
                VertexId w = g.other(e, u);
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    touched.push_back(w);
                    queue.push_back(w);
                }
            }
        }
        for (VertexId w : touched) {
            if (w > src && included(w)) power_edges.emplace_back(src, w);
            dist[w] = -1;
        }
    }
    return Graph::from_edges(g.n(), std::move(power_edges));
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> side(g.n(), -1);
    for (VertexId src = 0; src < g.n(); ++src) {
        if (side[src] >= 0) continue;
        side[src] = 0;
        std::deque<VertexId> queue{src};
        while (!queue.empty()) {
            VertexId u = queue.front();
            queue.pop_front();
            for (EdgeId e : g.incident(u)) {
                VertexId w = g.other(e, u);
                if (side[w] < 0) {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if (side[w] == side[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

}  // namespace vizlocal
