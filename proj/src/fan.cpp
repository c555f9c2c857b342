#include "vizlocal/fan.hpp"

#include <algorithm>
#include <climits>

#include "vizlocal/error.hpp"

namespace vizlocal {

namespace {

// Applies a recoloring atomically: detach every touched edge, then assign the
// new colors. Individual repair steps are allowed to pass through states the
// incremental tables could not represent (the classic transient conflicts of
// fan rotation), but every batch ends proper or set_color throws.
void apply_recoloring(PartialColoring& coloring,
                      const std::vector<std::pair<EdgeId, int>>& changes) {
    for (const auto& [e, c] : changes) {
        (void)c;
        coloring.set_color(e, kUncolored);
    }
    for (const auto& [e, c] : changes) {
        if (c != kUncolored) coloring.set_color(e, c);
    }
}

int flip(int c, int a, int b) { return c == a ? b : a; }

}  // namespace

NormalFan grow_normal_fan(const PartialColoring& coloring, VertexId v, int alpha,
                          EdgeId seed_edge) {
    const Graph& g = coloring.graph();
    if (!coloring.is_missing(v, alpha))
        throw StateError("alpha not missing at fan center " + std::to_string(v));
    if (seed_edge < 0) {
        for (EdgeId e : g.incident(v)) {
            if (coloring.color(e) == kUncolored && (seed_edge < 0 || e < seed_edge))
                seed_edge = e;
        }
        if (seed_edge < 0)
            throw StateError("no uncolored edge at fan center " + std::to_string(v));
    } else {
        if (coloring.color(seed_edge) != kUncolored)
            throw StateError("fan seed edge is colored");
        auto [a, b] = g.edge(seed_edge);
        if (a != v && b != v) throw StateError("fan seed edge not incident to center");
    }

    NormalFan fan;
    fan.center = v;
    fan.alpha = alpha;
    fan.built_version = coloring.version();
    fan.leaves.push_back(g.other(seed_edge, v));
    fan.edges.push_back(seed_edge);
    fan.m.push_back(coloring.missing_color(fan.leaves.back()));

    for (;;) {
        int mi = fan.m.back();
        if (coloring.is_missing(v, mi)) {
            fan.closes = true;
            break;
        }
        auto earlier = std::find(fan.m.begin(), fan.m.end() - 1, mi);
        if (earlier != fan.m.end() - 1) {
            fan.repeat_index = static_cast<int>(earlier - fan.m.begin()) + 1;
            if (fan.repeat_index > fan.degree() - 2)
                throw StructureError("fan repeat index exceeds degree-2");
            break;
        }
        EdgeId next = coloring.edge_with_color(v, mi);
        if (next < 0) throw StateError("fan growth lost its next edge");
        fan.leaves.push_back(g.other(next, v));
        fan.edges.push_back(next);
        fan.m.push_back(coloring.missing_color(fan.leaves.back()));
    }
    fan.beta = fan.m.back();
    return fan;
}

bool normal_fan_consistent(const PartialColoring& coloring, const NormalFan& fan) {
    if (coloring.version() == fan.built_version) return true;
    if (coloring.color(fan.edges[0]) != kUncolored) return false;
    for (int i = 1; i < fan.degree(); ++i)
        if (coloring.color(fan.edges[i]) != fan.m[i - 1]) return false;
    if (!coloring.is_missing(fan.center, fan.alpha)) return false;
    for (int i = 0; i < fan.degree(); ++i)
        if (!coloring.is_missing(fan.leaves[i], fan.m[i])) return false;
    if (fan.closes && !coloring.is_missing(fan.center, fan.beta)) return false;
    return true;
}

SubFanState sub_fan_state(const PartialColoring& coloring, const SubReverseFan& fan) {
    for (EdgeId e : fan.edges)
        if (coloring.color(e) != kUncolored) return SubFanState::kDestroyed;
    if (coloring.is_missing(fan.center, fan.alpha)) {
        for (VertexId x : fan.leaves)
            if (coloring.is_missing(x, fan.alpha)) return SubFanState::kSemi;
        return SubFanState::kDestroyed;
    }
    if (!coloring.is_missing(fan.center, fan.beta)) return SubFanState::kDestroyed;
    if (!coloring.is_missing(fan.leaves[0], fan.alpha) ||
        !coloring.is_missing(fan.leaves[1], fan.alpha))
        return SubFanState::kDestroyed;
    return SubFanState::kValid;
}

void shift(PartialColoring& coloring, const NormalFan& fan, int i) {
    if (i < 1 || i > fan.degree()) throw UsageError("shift index out of range");
    if (!normal_fan_consistent(coloring, fan))
        throw StaleFanError("fan no longer matches the coloring");
    std::vector<std::pair<EdgeId, int>> changes;
    for (int j = 1; j < i; ++j) changes.emplace_back(fan.edges[j - 1], fan.m[j - 1]);
    changes.emplace_back(fan.edges[i - 1], kUncolored);
    apply_recoloring(coloring, changes);
}

AlternatingPath walk_alternating_path(const PartialColoring& coloring, VertexId start,
                                      int color_a, int color_b, EdgeId first_edge,
                                      long long max_edges) {
    const Graph& g = coloring.graph();
    if (color_a == color_b || color_a < 1 || color_b < 1)
        throw UsageError("alternating path needs two distinct real colors");
    AlternatingPath path;
    path.color_a = color_a;
    path.color_b = color_b;
    path.vertices.push_back(start);

    EdgeId cur = first_edge;
    if (cur < 0) {
        EdgeId ea = coloring.edge_with_color(start, color_a);
        EdgeId eb = coloring.edge_with_color(start, color_b);
        if (ea >= 0 && eb >= 0)
            throw UsageError("start vertex is interior to the alternating path");
        cur = ea >= 0 ? ea : eb;
        if (cur < 0) return path;  // misses both: empty path, maximal
    } else {
        auto [a, b] = g.edge(cur);
        if (a != start && b != start) throw UsageError("forced first edge not at start");
        int c = coloring.color(cur);
        if (c != color_a && c != color_b)
            throw UsageError("forced first edge not on the alternating path");
    }

    if (max_edges < 0) max_edges = g.m() + 1;
    VertexId at = start;
    while (cur >= 0) {
        if (path.length() >= max_edges) {
            path.complete = false;
            return path;
        }
        path.edges.push_back(cur);
        at = g.other(cur, at);
        path.vertices.push_back(at);
        int need = flip(coloring.color(cur), color_a, color_b);
        cur = coloring.edge_with_color(at, need);
        if (path.length() > g.m())
            throw StructureError("alternating path walk did not terminate");
    }
    return path;
}

void augment(PartialColoring& coloring, const AlternatingPath& path, long long prefix_len) {
    long long k = prefix_len < 0 ? path.length() : prefix_len;
    if (k > path.length()) throw UsageError("augment prefix longer than the path");
    if (k < path.length() && coloring.color(path.edges[k]) != kStar)
        throw StateError("augment prefix must stop at a blocking edge");
    std::vector<std::pair<EdgeId, int>> changes;
    changes.reserve(k);
    for (long long i = 0; i < k; ++i) {
        EdgeId e = path.edges[i];
        changes.emplace_back(e, flip(coloring.color(e), path.color_a, path.color_b));
    }
    apply_recoloring(coloring, changes);
}

RepairResult repair_normal_fan(PartialColoring& coloring, NormalFan& fan, long long T,
                               const BlockingChooser& choose_blocking) {
    if (T < 1) throw ParameterError("truncation length must be >= 1");
    if (!normal_fan_consistent(coloring, fan))
        throw StaleFanError("fan no longer matches the coloring");
    RepairResult res;
    const int k = fan.degree();

    if (fan.closes) {
        std::vector<std::pair<EdgeId, int>> changes;
        for (int j = 1; j <= k; ++j) changes.emplace_back(fan.edges[j - 1], fan.m[j - 1]);
        apply_recoloring(coloring, changes);
        res.colored = true;
        res.case_taken = RepairCase::kClosed;
        return res;
    }

    const int j = fan.repeat_index;
    const int alpha = fan.alpha;
    const int beta = fan.beta;
    long long cap = std::min<long long>(T, coloring.graph().m()) + 1;
    AlternatingPath path = walk_alternating_path(coloring, fan.center, alpha, beta,
                                                 fan.edges[j], cap);
    res.path_edges_walked = path.length();

    if (path.length() > T) {
        auto pick = choose_blocking(path);
        if (!pick) {
            res.strategy_failed = true;
            return res;
        }
        long long i = *pick;
        if (i < 1 || i > T) throw UsageError("blocking index outside the truncation window");
        std::vector<std::pair<EdgeId, int>> changes;
        for (int l = 1; l <= j; ++l) changes.emplace_back(fan.edges[l - 1], fan.m[l - 1]);
        for (long long p = 0; p + 1 < i; ++p) {
            EdgeId e = path.edges[p];
            changes.emplace_back(e, flip(coloring.color(e), alpha, beta));
        }
        changes.emplace_back(path.edges[i - 1], kStar);
        apply_recoloring(coloring, changes);
        res.colored = true;
        res.case_taken = RepairCase::kBlocked;
        res.star_edge = path.edges[i - 1];
        return res;
    }

    if (path.far_end() == fan.leaves[j - 1]) {
        // Path ends at x_j: augment first, re-pin m(x_j) to alpha, then the
        // fan closes with beta.
        augment(coloring, path);
        coloring.pin_missing_color(fan.leaves[j - 1], alpha);
        fan.m[j - 1] = alpha;
        std::vector<std::pair<EdgeId, int>> changes;
        for (int l = 1; l < k; ++l) changes.emplace_back(fan.edges[l - 1], fan.m[l - 1]);
        changes.emplace_back(fan.edges[k - 1], beta);
        apply_recoloring(coloring, changes);
        res.colored = true;
        res.case_taken = RepairCase::kEndsAtLeaf;
        return res;
    }

    std::vector<std::pair<EdgeId, int>> changes;
    for (int l = 1; l <= j; ++l) changes.emplace_back(fan.edges[l - 1], fan.m[l - 1]);
    for (EdgeId e : path.edges)
        changes.emplace_back(e, flip(coloring.color(e), alpha, beta));
    apply_recoloring(coloring, changes);
    res.colored = true;
    res.case_taken = RepairCase::kAugment;
    return res;
}

std::vector<SubReverseFan> split_sub_reverse(const ReverseFan& fan) {
    const int k = fan.degree();
    if (k < 2) throw UsageError("reverse fan needs at least two leaves");
    const int count = k / 2;
    if (static_cast<int>(fan.B.size()) < count)
        throw StateError("reverse fan B has too few reserved colors");
    std::vector<SubReverseFan> out;
    out.reserve(count);
    for (int i = 1; i <= count; ++i) {
        SubReverseFan sub;
        sub.center = fan.center;
        sub.alpha = fan.alpha;
        sub.index = i;
        sub.beta = fan.B[i - 1];
        int lo = 2 * (i - 1);
        int hi = (i == count) ? k : 2 * i;  // last slice absorbs the odd leaf
        for (int l = lo; l < hi; ++l) {
            sub.leaves.push_back(fan.leaves[l]);
            sub.edges.push_back(fan.edges[l]);
        }
        out.push_back(std::move(sub));
    }
    return out;
}

RepairResult repair_sub_reverse_fan(PartialColoring& coloring, const SubReverseFan& fan,
                                    long long T, const BlockingChooser& choose_blocking) {
    if (T < 1) throw ParameterError("truncation length must be >= 1");
    SubFanState state = sub_fan_state(coloring, fan);
    if (state == SubFanState::kDestroyed)
        throw StaleFanError("sub-reverse fan no longer matches the coloring");
    RepairResult res;

    if (state == SubFanState::kSemi) {
        for (std::size_t i = 0; i < fan.leaves.size(); ++i) {
            if (coloring.is_missing(fan.leaves[i], fan.alpha)) {
                coloring.set_color(fan.edges[i], fan.alpha);
                res.colored = true;
                res.case_taken = RepairCase::kSemiDirect;
                return res;
            }
        }
        throw StaleFanError("semi-destroyed sub-fan lost its alpha leaf");
    }

    long long cap = std::min<long long>(T, coloring.graph().m()) + 1;
    AlternatingPath path =
        walk_alternating_path(coloring, fan.center, fan.alpha, fan.beta, -1, cap);
    res.path_edges_walked = path.length();

    if (path.length() > T) {
        auto pick = choose_blocking(path);
        if (!pick) {
            res.strategy_failed = true;
            return res;
        }
        long long i = *pick;
        if (i < 1 || i > T) throw UsageError("blocking index outside the truncation window");
        std::vector<std::pair<EdgeId, int>> changes;
        for (long long p = 0; p + 1 < i; ++p) {
            EdgeId e = path.edges[p];
            changes.emplace_back(e, flip(coloring.color(e), fan.alpha, fan.beta));
        }
        changes.emplace_back(path.edges[i - 1], kStar);
        // The truncated window cannot contain the sub-fan's leaves, so the
        // first leaf always takes alpha.
        changes.emplace_back(fan.edges[0], fan.alpha);
        apply_recoloring(coloring, changes);
        res.colored = true;
        res.case_taken = RepairCase::kBlocked;
        res.star_edge = path.edges[i - 1];
        return res;
    }

    bool ends_at_first = !path.edges.empty() && path.far_end() == fan.leaves[0];
    std::vector<std::pair<EdgeId, int>> changes;
    for (EdgeId e : path.edges)
        changes.emplace_back(e, flip(coloring.color(e), fan.alpha, fan.beta));
    changes.emplace_back(ends_at_first ? fan.edges[1] : fan.edges[0], fan.alpha);
    apply_recoloring(coloring, changes);
    res.colored = true;
    res.case_taken = RepairCase::kAugment;
    return res;
}

bool alpha_beta_edge_consistent(const PartialColoring& coloring, const AlphaBetaEdge& item) {
    return coloring.color(item.edge) == kUncolored &&
           coloring.is_missing(item.v, item.alpha) && coloring.is_missing(item.u, item.beta);
}

RepairResult repair_alpha_beta_edge(PartialColoring& coloring, const AlphaBetaEdge& item,
                                    long long T, const BlockingChooser& choose_blocking) {
    if (T < 1) throw ParameterError("truncation length must be >= 1");
    if (!alpha_beta_edge_consistent(coloring, item))
        throw StaleFanError("edge item no longer matches the coloring");
    RepairResult res;
    long long cap = std::min<long long>(T, coloring.graph().m()) + 1;
    AlternatingPath path =
        walk_alternating_path(coloring, item.u, item.alpha, item.beta, -1, cap);
    res.path_edges_walked = path.length();

    if (path.length() > T) {
        auto pick = choose_blocking(path);
        if (!pick) {
            res.strategy_failed = true;
            return res;
        }
        long long i = *pick;
        if (i < 1 || i > T) throw UsageError("blocking index outside the truncation window");
        std::vector<std::pair<EdgeId, int>> changes;
        for (long long p = 0; p + 1 < i; ++p) {
            EdgeId e = path.edges[p];
            changes.emplace_back(e, flip(coloring.color(e), item.alpha, item.beta));
        }
        changes.emplace_back(path.edges[i - 1], kStar);
        changes.emplace_back(item.edge, item.alpha);
        apply_recoloring(coloring, changes);
        res.colored = true;
        res.case_taken = RepairCase::kBlocked;
        res.star_edge = path.edges[i - 1];
        return res;
    }

    std::vector<std::pair<EdgeId, int>> changes;
    for (EdgeId e : path.edges)
        changes.emplace_back(e, flip(coloring.color(e), item.alpha, item.beta));
    changes.emplace_back(item.edge, item.alpha);
    apply_recoloring(coloring, changes);
    res.colored = true;
    res.case_taken = RepairCase::kAugment;
    return res;
}

PartialColoring sequential_vizing(const Graph& g) {
    PartialColoring coloring(g, g.max_degree() + 1);
    BlockingChooser never = [](const AlternatingPath&) -> std::optional<long long> {
        throw StructureError("untruncated repair asked for a blocking edge");
    };
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (coloring.color(e) != kUncolored) continue;
        VertexId v = g.edge(e).first;
        NormalFan fan = grow_normal_fan(coloring, v, coloring.missing_color(v), e);
        RepairResult res = repair_normal_fan(coloring, fan, LLONG_MAX / 2, never);
        if (!res.colored) throw VerificationError("sequential repair failed to color an edge");
    }
    return coloring;
}

}  // namespace vizlocal
