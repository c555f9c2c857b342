#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vizlocal/coloring.hpp"

namespace vizlocal {

// Fan around a center vertex: the first edge is uncolored and every later
// edge v-x_i carries the recorded missing color of the previous leaf. The
// recorded snapshot (leaf order, m values) is what repair operates on; a
// mutation that breaks the snapshot makes the fan stale.
struct NormalFan {
    VertexId center = -1;
    int alpha = 0;
    std::vector<VertexId> leaves;  // x_1..x_k
    std::vector<EdgeId> edges;     // e_1..e_k, e_1 uncolored
    std::vector<int> m;            // recorded m(x_i)
    bool closes = false;           // m(x_k) missing at the center
    int repeat_index = 0;          // j with m(x_j) = m(x_k) when !closes (1-based)
    int beta = 0;                  // m(x_k)
    std::uint64_t built_version = 0;

    int degree() const { return static_cast<int>(leaves.size()); }
};

// Center with several uncolored incident edges whose far endpoints all miss a
// color the center has. B holds colors reserved at the center, filled in just
// before splitting into sub-reverse fans.
struct ReverseFan {
    VertexId center = -1;
    int alpha = 0;
    std::vector<VertexId> leaves;
    std::vector<EdgeId> edges;  // uncolored center-leaf edges, parallel to leaves
    std::vector<int> B;
    std::uint64_t built_version = 0;

    int degree() const { return static_cast<int>(leaves.size()); }
};

// Two (or, for the last slice of an odd fan, three) leaves of a reverse fan
// with their reserved center color.
struct SubReverseFan {
    VertexId center = -1;
    int alpha = 0;
    int index = 0;  // 1-based position within the parent reverse fan
    int beta = 0;
    std::vector<VertexId> leaves;
    std::vector<EdgeId> edges;
};

struct AlternatingPath {
    int color_a = 0;
    int color_b = 0;
    std::vector<VertexId> vertices;  // v_0..v_len
    std::vector<EdgeId> edges;       // len edges, colors strictly alternating
    bool complete = true;            // false iff the walk stopped at the edge limit

    long long length() const { return static_cast<long long>(edges.size()); }
    VertexId far_end() const { return vertices.back(); }
};

// Grows a fan at v for a missing color alpha, starting from seed_edge (the
// lowest-id uncolored incident edge when -1) and iterating until one of the
// two stopping conditions fires.
NormalFan grow_normal_fan(const PartialColoring& coloring, VertexId v, int alpha,
                          EdgeId seed_edge = -1);

// True while the coloring still matches the fan's recorded structure.
bool normal_fan_consistent(const PartialColoring& coloring, const NormalFan& fan);

enum class SubFanState {
    kValid,      // repairable through its alternating path
    kSemi,       // center regained alpha; repairable by coloring one edge
    kDestroyed,  // structure broken, skip
};
SubFanState sub_fan_state(const PartialColoring& coloring, const SubReverseFan& fan);

// Rotates colors down the fan so the uncolored slot moves from the first edge
// to edge i: e_j := m(x_j) for j < i, edge i becomes uncolored. Throws
// StaleFanError when the coloring no longer matches the fan.
void shift(PartialColoring& coloring, const NormalFan& fan, int i);

// Maximal alternating path in colors (a, b) from start. start must miss a or
// b unless first_edge forces the initial step; a vertex missing both yields
// the empty path. max_edges cuts the walk early (complete=false) so callers
// only pay for the truncation window they need.
AlternatingPath walk_alternating_path(const PartialColoring& coloring, VertexId start,
                                      int color_a, int color_b, EdgeId first_edge = -1,
                                      long long max_edges = -1);

// Swaps the two colors along the path, or along its first prefix_len edges.
// A proper prefix requires the next edge to already carry the blocking color.
void augment(PartialColoring& coloring, const AlternatingPath& path,
             long long prefix_len = -1);

// Picks the 1-based blocking index over the first T edges of a too-long
// path; nullopt means the strategy failed and nothing may be mutated.
using BlockingChooser =
    std::function<std::optional<long long>(const AlternatingPath& path)>;

enum class RepairCase {
    kNone,
    kClosed,       // terminal closes: rotate and color the last edge
    kAugment,      // path does not end at x_j: rotate then augment
    kEndsAtLeaf,   // path ends at x_j: augment, re-pin, rotate, color
    kBlocked,      // truncated path: blocking edge placed, prefix augmented
    kSemiDirect,   // sub-reverse center already misses alpha: color directly
};

struct RepairResult {
    bool colored = false;
    bool strategy_failed = false;
    RepairCase case_taken = RepairCase::kNone;
    EdgeId star_edge = -1;
    long long path_edges_walked = 0;
};

// Colors the fan's uncolored edge, possibly placing one blocking edge and
// augmenting a (prefix of an) alternating path. On strategy failure the
// coloring is left untouched. Throws StaleFanError on a stale fan.
RepairResult repair_normal_fan(PartialColoring& coloring, NormalFan& fan, long long T,
                               const BlockingChooser& choose_blocking);

// Splits a reverse fan into floor(k/2) edge-disjoint sub-reverse fans; the
// last one takes three leaves when k is odd. fan.B supplies the reserved
// colors in order.
std::vector<SubReverseFan> split_sub_reverse(const ReverseFan& fan);

// Augments the maximal alpha/beta_i path from the center (or its blocked
// prefix) and colors one of the sub-fan's first two edges with alpha.
RepairResult repair_sub_reverse_fan(PartialColoring& coloring, const SubReverseFan& fan,
                                    long long T, const BlockingChooser& choose_blocking);

// Uncolored edge v-u with alpha missing at v and beta = m(u). The bipartite
// engine repairs it by augmenting the maximal alpha/beta path from u and then
// coloring the edge with alpha (parity keeps the path away from v).
struct AlphaBetaEdge {
    VertexId v = -1;
    VertexId u = -1;
    EdgeId edge = -1;
    int alpha = 0;
    int beta = 0;
};

bool alpha_beta_edge_consistent(const PartialColoring& coloring, const AlphaBetaEdge& item);

RepairResult repair_alpha_beta_edge(PartialColoring& coloring, const AlphaBetaEdge& item,
                                    long long T, const BlockingChooser& choose_blocking);

}  // namespace vizlocal
