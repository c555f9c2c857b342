#include "vizlocal/coloring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "vizlocal/error.hpp"

namespace vizlocal {

PartialColoring::PartialColoring(const Graph& g, int palette)
    : graph_(&g),
      palette_(palette),
      edge_color_(g.m(), kUncolored),
      at_(static_cast<std::size_t>(g.n()) * palette, -1),
      pin_(g.n(), 0),
      star_deg_(g.n(), 0),
      uncolored_deg_(g.n(), 0),
      uncolored_count_(g.m()) {
    if (palette < 1 && g.m() > 0) throw ParameterError("palette must be >= 1");
    for (VertexId v = 0; v < g.n(); ++v) uncolored_deg_[v] = g.degree(v);
}

int PartialColoring::missing_count(VertexId v) const {
    int count = 0;
    for (int c = 1; c <= palette_; ++c)
        if (at(v, c) == -1) ++count;
    return count;
}

std::vector<int> PartialColoring::missing_colors(VertexId v, int cap) const {
    std::vector<int> out;
    for (int c = 1; c <= palette_ && (cap < 0 || static_cast<int>(out.size()) < cap); ++c)
        if (at(v, c) == -1) out.push_back(c);
    return out;
}

int PartialColoring::missing_color(VertexId v) const {
    if (pin_[v] != 0) return pin_[v];
    for (int c = 1; c <= palette_; ++c)
        if (at(v, c) == -1) return c;
    throw StateError("vertex " + std::to_string(v) + " misses no color");
}

void PartialColoring::pin_missing_color(VertexId v, int c) {
    if (c < 1 || c > palette_) throw ParameterError("pin outside palette");
    if (at(v, c) != -1) throw StateError("pinned color not missing at vertex");
    pin_[v] = c;
}

void PartialColoring::set_color(EdgeId e, int value) {
    int old = edge_color_[e];
    if (old == value) return;
    auto [u, v] = graph_->edge(e);
    if (is_real(value)) {
        if (value > palette_) throw ParameterError("color outside palette");
        if (EdgeId clash = at(u, value); clash != -1)
            throw ConflictError("color " + std::to_string(value) + " on edge " +
                                    std::to_string(e) + " clashes with edge " +
                                    std::to_string(clash) + " at vertex " + std::to_string(u),
                                e, clash, value);
        if (EdgeId clash = at(v, value); clash != -1)
            throw ConflictError("color " + std::to_string(value) + " on edge " +
                                    std::to_string(e) + " clashes with edge " +
                                    std::to_string(clash) + " at vertex " + std::to_string(v),
                                e, clash, value);
    }
    if (is_real(old)) {
        at(u, old) = -1;
        at(v, old) = -1;
    } else if (old == kStar) {
        --star_deg_[u];
        --star_deg_[v];
        --star_count_;
    } else {
        --uncolored_count_;
        --uncolored_deg_[u];
        --uncolored_deg_[v];
    }
    edge_color_[e] = value;
    if (is_real(value)) {
        at(u, value) = e;
        at(v, value) = e;
        if (pin_[u] == value) pin_[u] = 0;
        if (pin_[v] == value) pin_[v] = 0;
    } else if (value == kStar) {
        ++star_deg_[u];
        ++star_deg_[v];
        ++star_count_;
        max_load_seen_ = std::max({max_load_seen_, star_deg_[u], star_deg_[v]});
    } else {
        ++uncolored_count_;
        ++uncolored_deg_[u];
        ++uncolored_deg_[v];
    }
    ++version_;
}

int PartialColoring::current_max_load() const {
    int best = 0;
    for (int d : star_deg_) best = std::max(best, d);
    return best;
}

std::vector<Violation> PartialColoring::verify_proper() const {
    return verify_colors(*graph_, edge_color_);
}

void PartialColoring::audit() const {
    std::vector<int> star(graph_->n(), 0);
    std::vector<int> unc_deg(graph_->n(), 0);
    int unc = 0, stars = 0;
    std::vector<int> table(at_.size(), -1);
    for (EdgeId e = 0; e < graph_->m(); ++e) {
        int c = edge_color_[e];
        auto [u, v] = graph_->edge(e);
        if (c == kUncolored) {
            ++unc;
            ++unc_deg[u];
            ++unc_deg[v];
        } else if (c == kStar) {
            ++star[u];
            ++star[v];
            ++stars;
        } else if (c <= palette_) {
            table[static_cast<std::size_t>(u) * palette_ + c - 1] = e;
            table[static_cast<std::size_t>(v) * palette_ + c - 1] = e;
        }
    }
    if (unc != uncolored_count_ || stars != star_count_ || star != star_deg_ ||
        unc_deg != uncolored_deg_ || table != at_)
        throw VerificationError("coloring tables drifted from recount");
    for (int v = 0; v < graph_->n(); ++v)
        if (pin_[v] != 0 && !is_missing(v, pin_[v]))
            throw VerificationError("pinned color not missing at vertex " + std::to_string(v));
}

int PartialColoring::colors_used() const {
    std::set<int> used;
    for (int c : edge_color_)
        if (is_real(c)) used.insert(c);
    return static_cast<int>(used.size());
}

void PartialColoring::extend_palette(int new_palette) {
    if (new_palette < palette_) throw ParameterError("palette can only grow");
    if (new_palette == palette_) return;
    std::vector<int> grown(static_cast<std::size_t>(graph_->n()) * new_palette, -1);
    for (int v = 0; v < graph_->n(); ++v)
        for (int c = 1; c <= palette_; ++c)
            grown[static_cast<std::size_t>(v) * new_palette + c - 1] = at(v, c);
    at_ = std::move(grown);
    palette_ = new_palette;
    ++version_;
}

std::vector<Violation> verify_colors(const Graph& g, const std::vector<int>& colors) {
    std::vector<Violation> out;
    std::vector<std::pair<int, EdgeId>> seen;  // (color, edge) per vertex
    for (VertexId v = 0; v < g.n(); ++v) {
        seen.clear();
        for (EdgeId e : g.incident(v)) {
            int c = colors[e];
            if (c >= 1) seen.emplace_back(c, e);
        }
        std::sort(seen.begin(), seen.end());
        // every clashing pair, not just consecutive ones
        for (std::size_t i = 0; i < seen.size(); ++i)
            for (std::size_t j = i + 1; j < seen.size() && seen[j].first == seen[i].first; ++j)
                out.push_back({seen[i].second, seen[j].second, seen[i].first, v});
    }
    return out;
}

void finalize_star_edges(PartialColoring& coloring) {
    const Graph& g = coloring.graph();
    std::vector<EdgeId> stars;
    for (EdgeId e = 0; e < g.m(); ++e) {
        int c = coloring.color(e);
        if (c == kUncolored) throw StateError("uncolored edge " + std::to_string(e));
        if (c == kStar) stars.push_back(e);
    }
    if (stars.empty()) return;
    int load = coloring.current_max_load();
    int base = coloring.palette();
    coloring.extend_palette(base + 2 * load - 1);
    // Greedy edge coloring of the star subgraph; its max degree is the load,
    // so 2*load-1 fresh colors always suffice.
    for (EdgeId e : stars) {
        auto [u, v] = g.edge(e);
        int chosen = 0;
        for (int c = base + 1; c <= base + 2 * load - 1; ++c) {
            if (coloring.is_missing(u, c) && coloring.is_missing(v, c)) {
                chosen = c;
                break;
            }
        }
        if (chosen == 0) throw VerificationError("star subgraph exceeded fresh palette");
        coloring.set_color(e, chosen);
    }
}

std::string save_coloring(const PartialColoring& coloring) {
    std::ostringstream out;
    for (EdgeId e = 0; e < coloring.graph().m(); ++e) {
        int c = coloring.color(e);
        out << e << ' ';
        if (c == kUncolored)
            out << '_';
        else if (c == kStar)
            out << '*';
        else
            out << c;
        out << '\n';
    }
    return out.str();
}

std::vector<int> load_coloring(const Graph& g, const std::string& text) {
    std::vector<int> colors(g.m(), kUncolored);
    std::vector<char> seen(g.m(), 0);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long e;
        std::string tok;
        if (!(ls >> e >> tok))
            throw FormatError("line " + std::to_string(lineno) + ": expected \"edge_id color\"");
        if (e < 0 || e >= g.m())
            throw FormatError("line " + std::to_string(lineno) + ": edge id out of range");
        if (seen[e])
            throw FormatError("line " + std::to_string(lineno) + ": duplicate edge id");
        seen[e] = 1;
        if (tok == "_") {
            colors[e] = kUncolored;
        } else if (tok == "*") {
            colors[e] = kStar;
        } else {
            try {
                colors[e] = std::stoi(tok);
            } catch (const std::exception&) {
                throw FormatError("line " + std::to_string(lineno) + ": bad color \"" + tok + "\"");
            }
            if (colors[e] < 1)
                throw FormatError("line " + std::to_string(lineno) + ": colors are positive");
        }
    }
    return colors;
}

}  // namespace vizlocal
