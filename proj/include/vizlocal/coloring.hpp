#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vizlocal/graph.hpp"

namespace vizlocal {

// Edge color slots. Real colors are 1..palette (extended past the palette only
// by star finalization); 0 is uncolored, -1 is the reserved blocking color.
inline constexpr int kUncolored = 0;
inline constexpr int kStar = -1;

struct Violation {
    EdgeId edge_a;
    EdgeId edge_b;
    int color;
    VertexId at;
};

// Partial edge coloring with incremental missing-color bookkeeping and a
// per-vertex blocking-edge load tracker. Single-writer; copies are cheap
// enough for fuzzing. The referenced Graph must outlive the coloring.
class PartialColoring {
public:
    PartialColoring(const Graph& g, int palette);

    const Graph& graph() const { return *graph_; }
    int palette() const { return palette_; }
    int color(EdgeId e) const { return edge_color_[e]; }
    bool is_real(int c) const { return c >= 1; }

    int uncolored_count() const { return uncolored_count_; }
    // Number of uncolored edges at v; positive iff v is incomplete.
    int uncolored_degree(VertexId v) const { return uncolored_deg_[v]; }
    int star_count() const { return star_count_; }
    std::uint64_t version() const { return version_; }

    // True iff no incident edge of v carries real color c (c in 1..palette).
    bool is_missing(VertexId v, int c) const { return at(v, c) == -1; }
    // Edge at v carrying real color c, or -1.
    EdgeId edge_with_color(VertexId v, int c) const { return at(v, c); }
    int missing_count(VertexId v) const;
    // Missing colors of v in ascending order, at most cap of them (-1 = all).
    std::vector<int> missing_colors(VertexId v, int cap = -1) const;

    // m(v): the pinned choice if set, else the lowest missing color. Throws
    // StateError when v misses nothing (only possible with a Delta palette on
    // a fully colored vertex).
    int missing_color(VertexId v) const;
    // Pin m(v) to a currently missing color. The pin clears itself when the
    // color stops being missing. This is also the tie-break override hook.
    void pin_missing_color(VertexId v, int c);
    void clear_pin(VertexId v) { pin_[v] = 0; }
    int pinned(VertexId v) const { return pin_[v]; }

    // Assigns value (kUncolored, kStar, or a real color) to edge e, keeping
    // all tables incremental. A real assignment that clashes with an incident
    // edge throws ConflictError naming the clashing edge.
    void set_color(EdgeId e, int value);

    // Blocking-edge loads.
    int star_degree(VertexId v) const { return star_deg_[v]; }
    int current_max_load() const;
    int max_load_seen() const { return max_load_seen_; }

    // Every pair of incident edges sharing a real color.
    std::vector<Violation> verify_proper() const;
    // Recomputes every table from scratch and compares; throws
    // VerificationError on drift. Test/debug aid.
    void audit() const;

    bool fully_colored() const { return uncolored_count_ == 0; }

    // Grows the palette (used by star finalization for fresh colors).
    void extend_palette(int new_palette);

    // Number of distinct real colors currently in use.
    int colors_used() const;

private:
    int at(VertexId v, int c) const { return at_[static_cast<std::size_t>(v) * palette_ + c - 1]; }
    int& at(VertexId v, int c) { return at_[static_cast<std::size_t>(v) * palette_ + c - 1]; }

    const Graph* graph_;
    int palette_;
    std::vector<int> edge_color_;
    std::vector<int> at_;        // n x palette: color -> incident edge or -1
    std::vector<int> pin_;       // 0 = unpinned
    std::vector<int> star_deg_;
    std::vector<int> uncolored_deg_;
    int max_load_seen_ = 0;
    int star_count_ = 0;
    int uncolored_count_;
    std::uint64_t version_ = 0;
};

// Properness check over a raw color assignment (no bookkeeping needed);
// shared by the verifier CLI and the exhaustive-oracle tests.
std::vector<Violation> verify_colors(const Graph& g, const std::vector<int>& colors);

// Colors every edge with at most palette+1 real colors by repairing one fan
// per uncolored edge with untruncated alternating paths. Output always passes
// the verifier and never uses the blocking color.
PartialColoring sequential_vizing(const Graph& g);

// Recolors all blocking edges with fresh colors palette+1..palette+(2L-1)
// where L is the maximum load; greedy over the star subgraph. Requires every
// edge to be real or starred.
void finalize_star_edges(PartialColoring& coloring);

// Coloring dump: one "edge_id color" line per edge, color in {"_", int, "*"}.
std::string save_coloring(const PartialColoring& coloring);
// Parses a dump against a graph; returns raw per-edge colors. FormatError
// carries the offending line number.
std::vector<int> load_coloring(const Graph& g, const std::string& text);

}  // namespace vizlocal
