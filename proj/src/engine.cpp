#include "vizlocal/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "vizlocal/error.hpp"

namespace vizlocal {

namespace {

// Unwind signal: a blocking strategy failed, the run freezes where it stands.
struct Frozen {};

struct ClassItemOps {
    int count = 0;
    std::function<bool(int)> alive;
    std::function<void(int, std::vector<VertexId>&)> vertices;
    std::function<std::optional<AlternatingPath>(int)> walk;
    std::function<RepairResult(int, const BlockingChooser&)> repair;
    std::function<VertexId(int)> key;
};

class Engine {
public:
    Engine(const Graph& g, const RunConfig& cfg, int palette)
        : g_(g), cfg_(cfg), coloring_(g, std::max(palette, 1)), root_(cfg.seed) {
        int delta = g.max_degree();
        strategy_ = cfg.strategy;
        if (strategy_.lambda <= 1.0) throw ParameterError("lambda must exceed 1");
        strategy_.delta = delta_formula(g.n(), strategy_.lambda);
        if (cfg.explicit_T) {
            if (cfg.T < 1) throw ParameterError("explicit T must be >= 1");
            T_ = cfg.T;
        } else {
            T_ = default_T(cfg.algorithm, strategy_.kind, delta, g.n(), strategy_.lambda);
        }
        greedy_ = strategy_.kind == StrategyKind::kGreedyPotential;
        if (greedy_) {
            long long budget =
                cfg.explicit_T
                    ? std::max<long long>(
                          1, static_cast<long long>(std::ceil(
                                 static_cast<double>(T_) / (2.0 * strategy_.lambda))))
                    : std::max<long long>(
                          1, static_cast<long long>(std::ceil(t_formula(cfg.algorithm, delta, g.n()))));
            potential_ = PotentialState(g.n(), budget, T_, strategy_.delta, strategy_.lambda);
            phi_prev_ = potential_.phi();
            report_.phi_trace.push_back(phi_prev_);
        }
        report_.algorithm = to_string(cfg.algorithm);
        report_.n = g.n();
        report_.m = g.m();
        report_.delta = delta;
        report_.strategy = to_string(strategy_.kind);
        report_.T = T_;
        report_.T_mode = cfg.explicit_T ? "explicit" : "paper";
        report_.lambda = strategy_.lambda;
        report_.delta_param = strategy_.delta;
        report_.seed = cfg.seed;
    }

    const Graph& g() const { return g_; }
    PartialColoring& coloring() { return coloring_; }
    RoundLedger& ledger() { return ledger_; }
    RunReport& report() { return report_; }
    long long T() const { return T_; }
    bool frozen() const { return frozen_; }
    void mark_frozen() { frozen_ = true; }

    void verify_now(const char* what) {
        if (!coloring_.verify_proper().empty())
            throw VerificationError(std::string("properness violated after ") + what);
    }
    void after_mutation() {
        if (cfg_.assert_level == AssertLevel::kDebug) {
            verify_now("mutation");
            coloring_.audit();
        }
    }
    void after_wave(const char* what) {
        if (cfg_.assert_level != AssertLevel::kFast) verify_now(what);
    }

    BlockingChooser make_chooser(VertexId key) {
        long long wave = waves_;
        return [this, wave, key](const AlternatingPath& p) -> std::optional<long long> {
            RngStream r = root_.derive(kRngBlocking, static_cast<std::uint64_t>(wave),
                                       static_cast<std::uint64_t>(key));
            return choose_blocking_edge(p, T_, strategy_, coloring_, r);
        };
    }

    void note_star(EdgeId star_edge) {
        ++stars_placed_;
        if (greedy_ && star_edge >= 0) {
            auto [a, b] = g_.edge(star_edge);
            potential_.on_load_increment(coloring_.star_degree(a));
            potential_.on_load_increment(coloring_.star_degree(b));
        }
    }

    void end_wave_checks() {
        if (greedy_) {
            double phi = potential_.end_wave();
            if (!(phi <= phi_prev_ * (1.0 + 1e-9)))
                throw VerificationError("potential increased across a repair wave");
            phi_prev_ = phi;
            report_.phi_trace.push_back(phi);
            if (waves_ % 64 == 0) {
                std::vector<int> loads(g_.n());
                for (VertexId v = 0; v < g_.n(); ++v) loads[v] = coloring_.star_degree(v);
                double fresh = potential_.recompute(loads);
                double scale = std::max({std::abs(fresh), std::abs(phi), 1e-300});
                if (std::abs(fresh - phi) > 1e-9 * scale)
                    throw VerificationError("incremental potential drifted from recount");
            }
        }
        after_wave("repair wave");
    }

    // Conflict-colors one alpha-beta class and repairs it wave by wave.
    void process_class(const ClassItemOps& ops) {
        std::vector<int> items;
        for (int i = 0; i < ops.count; ++i)
            if (ops.alive(i)) items.push_back(i);
        if (items.empty()) return;

        std::map<VertexId, int> owner;
        std::vector<VertexId> scratch;
        for (std::size_t pos = 0; pos < items.size(); ++pos) {
            scratch.clear();
            ops.vertices(items[pos], scratch);
            for (VertexId v : scratch) owner[v] = static_cast<int>(pos);
        }
        std::vector<int> arcs(items.size(), -1);
        for (std::size_t pos = 0; pos < items.size(); ++pos) {
            auto path = ops.walk(items[pos]);
            if (!path || !path->complete || path->length() > T_ || path->length() == 0)
                continue;
            auto it = owner.find(path->far_end());
            if (it != owner.end() && it->second != static_cast<int>(pos))
                arcs[pos] = it->second;
        }
        std::vector<int> wave_color =
            conflict_graph_coloring(arcs, &ledger_, static_cast<double>(T_), g_.n());
        int colors = *std::max_element(wave_color.begin(), wave_color.end());
        for (int wc = 1; wc <= colors; ++wc) {
            std::vector<int> wave;
            for (std::size_t pos = 0; pos < items.size(); ++pos)
                if (wave_color[pos] == wc) wave.push_back(items[pos]);
            if (wave.empty()) continue;
            std::sort(wave.begin(), wave.end(),
                      [&](int a, int b) { return ops.key(a) < ops.key(b); });
            if (cfg_.shuffle_waves != 0) {
                RngStream r = RngStream(cfg_.shuffle_waves)
                                  .derive(kRngShuffle, static_cast<std::uint64_t>(waves_));
                for (std::size_t i = wave.size(); i > 1; --i)
                    std::swap(wave[i - 1], wave[r.next_below(i)]);
            }
            ++waves_;
            ledger_.charge("repair_wave", "T", static_cast<double>(T_));
            for (int item : wave) {
                if (!ops.alive(item)) continue;  // destroyed by an earlier wave
                RepairResult res = ops.repair(item, make_chooser(ops.key(item)));
                if (res.strategy_failed) {
                    frozen_ = true;
                    throw Frozen{};
                }
                if (res.star_edge >= 0) note_star(res.star_edge);
                after_mutation();
            }
            end_wave_checks();
        }
    }

    // Normal-fans-only classes (first scheduler): partition by beta, repair.
    void process_normal_fans(std::vector<NormalFan>& fans) {
        std::map<int, std::vector<int>> by_beta;
        for (int i = 0; i < static_cast<int>(fans.size()); ++i)
            by_beta[fans[i].beta].push_back(i);
        std::vector<char> done(fans.size(), 0);
        for (auto& [beta, idxs] : by_beta) {
            (void)beta;
            ClassItemOps ops;
            ops.count = static_cast<int>(idxs.size());
            ops.alive = [&](int i) {
                int f = idxs[i];
                return !done[f] && normal_fan_consistent(coloring_, fans[f]);
            };
            ops.vertices = [&](int i, std::vector<VertexId>& out) {
                const NormalFan& fan = fans[idxs[i]];
                out.push_back(fan.center);
                out.insert(out.end(), fan.leaves.begin(), fan.leaves.end());
            };
            ops.walk = [&](int i) -> std::optional<AlternatingPath> {
                const NormalFan& fan = fans[idxs[i]];
                if (fan.closes) return std::nullopt;
                long long cap = std::min<long long>(T_, g_.m()) + 1;
                return walk_alternating_path(coloring_, fan.center, fan.alpha, fan.beta,
                                             fan.edges[fan.repeat_index], cap);
            };
            ops.repair = [&](int i, const BlockingChooser& ch) {
                int f = idxs[i];
                RepairResult r = repair_normal_fan(coloring_, fans[f], T_, ch);
                if (r.colored) done[f] = 1;
                return r;
            };
            ops.key = [&](int i) { return fans[idxs[i]].center; };
            process_class(ops);
        }
    }

    // Direct repair of this class's semi-destroyed sub-fans (the centers
    // regained alpha through an augment that ended there).
    void semi_destroyed_pass(const std::vector<int>& class_subs,
                             std::vector<SubReverseFan>& subs,
                             std::vector<char>& sub_done) {
        std::vector<int> todo;
        for (int idx : class_subs)
            if (!sub_done[idx] && sub_fan_state(coloring_, subs[idx]) == SubFanState::kSemi)
                todo.push_back(idx);
        if (todo.empty()) return;
        ++waves_;
        ledger_.charge("repair_wave", "T", static_cast<double>(T_));
        for (int idx : todo) {
            RepairResult res =
                repair_sub_reverse_fan(coloring_, subs[idx], T_, make_chooser(subs[idx].center));
            if (res.colored) sub_done[idx] = 1;
            after_mutation();
        }
        end_wave_checks();
    }

    RunResult finish() {
        int ell = coloring_.max_load_seen();
        if (!frozen_) {
            if (coloring_.star_count() > 0) {
                finalize_star_edges(coloring_);
                ledger_.charge("finalize", "ell + log* n", ell + log_star(g_.n()));
            }
            if (coloring_.uncolored_count() != 0)
                throw VerificationError("run finished with uncolored edges");
        }
        verify_now("run");
        if (cfg_.assert_level == AssertLevel::kDebug) coloring_.audit();
        report_.colors_used = coloring_.colors_used();
        report_.ell_G = ell;
        report_.repair_executions = waves_;
        report_.failed = frozen_;
        report_.ledger = ledger_;
        return RunResult{std::move(coloring_), std::move(report_)};
    }

    bool assert_standard() const { return cfg_.assert_level != AssertLevel::kFast; }

private:
    const Graph& g_;
    RunConfig cfg_;
    PartialColoring coloring_;
    RoundLedger ledger_;
    RunReport report_;
    RngStream root_;
    BlockingStrategy strategy_;
    long long T_ = 1;
    bool greedy_ = false;
    bool frozen_ = false;
    PotentialState potential_;
    double phi_prev_ = 0.0;
    long long waves_ = 0;
    long long stars_placed_ = 0;
};

std::vector<std::vector<VertexId>> color_buckets(const HopColoring& hop, int n) {
    std::vector<std::vector<VertexId>> buckets(hop.num_colors + 1);
    for (VertexId v = 0; v < n; ++v)
        if (hop.color[v] > 0) buckets[hop.color[v]].push_back(v);
    return buckets;
}

void drive_alg1(Engine& en) {
    const Graph& g = en.g();
    PartialColoring& col = en.coloring();
    const int palette = col.palette();
    if (g.m() == 0) return;
    int delta = g.max_degree();
    HopColoring hop2 = hop_coloring(g, 2, delta * delta + 1, &en.ledger());
    auto buckets = color_buckets(hop2, g.n());

    while (col.uncolored_count() > 0) {
        int before = col.uncolored_count();
        en.report().iterations.push_back({before, before});
        for (int i = 1; i <= hop2.num_colors; ++i) {
            for (int alpha = 1; alpha <= palette; ++alpha) {
                std::vector<NormalFan> fans;
                for (VertexId v : buckets[i]) {
                    // membership re-tested against the live coloring
                    if (col.uncolored_degree(v) > 0 && col.is_missing(v, alpha))
                        fans.push_back(grow_normal_fan(col, v, alpha));
                }
                if (fans.empty()) continue;
                en.process_normal_fans(fans);
            }
        }
        int after = col.uncolored_count();
        en.report().iterations.back().uncolored_after = after;
        if (after >= before)
            throw VerificationError("no progress in a full repair pass");
    }
}

// Shared by the fast scheduler and the bipartite scheduler: repair one
// alpha-iteration's items (normal fans, sub-reverse fans, edge items) in
// per-beta conflict classes.
void process_item_classes(Engine& en, std::vector<NormalFan>* normals,
                          const std::vector<char>* normal_active,
                          std::vector<SubReverseFan>& subs,
                          std::vector<AlphaBetaEdge>& edge_items) {
    PartialColoring& col = en.coloring();
    struct ClassItems {
        std::vector<int> normal_idx;
        std::vector<int> sub_idx;
        std::vector<int> edge_idx;
    };
    std::map<int, ClassItems> classes;
    if (normals) {
        for (int i = 0; i < static_cast<int>(normals->size()); ++i)
            if (!normal_active || (*normal_active)[i])
                classes[(*normals)[i].beta].normal_idx.push_back(i);
    }
    for (int j = 0; j < static_cast<int>(subs.size()); ++j)
        classes[subs[j].beta].sub_idx.push_back(j);
    for (int k = 0; k < static_cast<int>(edge_items.size()); ++k)
        classes[edge_items[k].beta].edge_idx.push_back(k);

    std::vector<char> normal_done(normals ? normals->size() : 0, 0);
    std::vector<char> sub_done(subs.size(), 0);
    std::vector<char> edge_done(edge_items.size(), 0);

    for (auto& [beta, cls] : classes) {
        (void)beta;
        const int nn = static_cast<int>(cls.normal_idx.size());
        const int ns = static_cast<int>(cls.sub_idx.size());
        const int ne = static_cast<int>(cls.edge_idx.size());
        ClassItemOps ops;
        ops.count = nn + ns + ne;
        ops.alive = [&, nn, ns](int i) -> bool {
            if (i < nn) {
                int f = cls.normal_idx[i];
                return !normal_done[f] && normal_fan_consistent(col, (*normals)[f]);
            }
            if (i < nn + ns) {
                int s = cls.sub_idx[i - nn];
                return !sub_done[s] &&
                       sub_fan_state(col, subs[s]) != SubFanState::kDestroyed;
            }
            int e = cls.edge_idx[i - nn - ns];
            return !edge_done[e] && alpha_beta_edge_consistent(col, edge_items[e]);
        };
        ops.vertices = [&, nn, ns](int i, std::vector<VertexId>& out) {
            if (i < nn) {
                const NormalFan& fan = (*normals)[cls.normal_idx[i]];
                out.push_back(fan.center);
                out.insert(out.end(), fan.leaves.begin(), fan.leaves.end());
            } else if (i < nn + ns) {
                const SubReverseFan& sub = subs[cls.sub_idx[i - nn]];
                out.push_back(sub.center);
                out.insert(out.end(), sub.leaves.begin(), sub.leaves.end());
            } else {
                const AlphaBetaEdge& item = edge_items[cls.edge_idx[i - nn - ns]];
                out.push_back(item.v);
                out.push_back(item.u);
            }
        };
        ops.walk = [&, nn, ns](int i) -> std::optional<AlternatingPath> {
            long long cap = std::min<long long>(en.T(), en.g().m()) + 1;
            if (i < nn) {
                const NormalFan& fan = (*normals)[cls.normal_idx[i]];
                if (fan.closes) return std::nullopt;
                return walk_alternating_path(col, fan.center, fan.alpha, fan.beta,
                                             fan.edges[fan.repeat_index], cap);
            }
            if (i < nn + ns) {
                const SubReverseFan& sub = subs[cls.sub_idx[i - nn]];
                if (sub_fan_state(col, sub) != SubFanState::kValid) return std::nullopt;
                return walk_alternating_path(col, sub.center, sub.alpha, sub.beta, -1, cap);
            }
            const AlphaBetaEdge& item = edge_items[cls.edge_idx[i - nn - ns]];
            return walk_alternating_path(col, item.u, item.alpha, item.beta, -1, cap);
        };
        ops.repair = [&, nn, ns](int i, const BlockingChooser& ch) {
            if (i < nn) {
                int f = cls.normal_idx[i];
                RepairResult r = repair_normal_fan(col, (*normals)[f], en.T(), ch);
                if (r.colored) normal_done[f] = 1;
                return r;
            }
            if (i < nn + ns) {
                int s = cls.sub_idx[i - nn];
                RepairResult r = repair_sub_reverse_fan(col, subs[s], en.T(), ch);
                if (r.colored) sub_done[s] = 1;
                return r;
            }
            int e = cls.edge_idx[i - nn - ns];
            RepairResult r = repair_alpha_beta_edge(col, edge_items[e], en.T(), ch);
            if (r.colored) edge_done[e] = 1;
            return r;
        };
        ops.key = [&, nn, ns](int i) -> VertexId {
            if (i < nn) return (*normals)[cls.normal_idx[i]].center;
            if (i < nn + ns) return subs[cls.sub_idx[i - nn]].center;
            return edge_items[cls.edge_idx[i - nn - ns]].v;
        };
        en.process_class(ops);
        en.semi_destroyed_pass(cls.sub_idx, subs, sub_done);
    }
}

void check_merge_invariants(Engine& en, const FanSet& active,
                            const std::vector<VertexId>& processed) {
    const PartialColoring& col = en.coloring();
    std::map<VertexId, int> seen;
    auto claim = [&](VertexId v) {
        if (seen.count(v))
            throw VerificationError("active fans are not vertex-disjoint");
        seen[v] = 1;
    };
    for (std::size_t i = 0; i < active.normals.size(); ++i) {
        if (!active.normal_active[i]) continue;
        claim(active.normals[i].center);
        for (VertexId x : active.normals[i].leaves) claim(x);
    }
    std::map<VertexId, int> covered;
    for (std::size_t i = 0; i < active.normals.size(); ++i)
        if (active.normal_active[i]) covered[active.normals[i].center] = 1;
    for (const ReverseFan& r : active.reverses) {
        claim(r.center);
        for (VertexId x : r.leaves) {
            claim(x);
            covered[x] = 1;
        }
        if (col.is_missing(r.center, r.alpha))
            throw VerificationError("reverse fan center misses alpha");
    }
    for (VertexId v : processed)
        if (!covered.count(v))
            throw VerificationError("processed vertex not covered by a fan");
}

void drive_alg2(Engine& en) {
    const Graph& g = en.g();
    PartialColoring& col = en.coloring();
    const int palette = col.palette();
    if (g.m() == 0) return;
    const int delta = g.max_degree();
    long long limit4 = std::min<long long>(4LL * delta * delta * delta * delta,
                                           static_cast<long long>(g.n()) + 1);

    while (col.uncolored_count() > 0) {
        int before = col.uncolored_count();
        en.report().iterations.push_back({before, before});
        HopColoring vcol = hop_coloring(g, 1, delta + 1, &en.ledger());
        auto buckets = color_buckets(vcol, g.n());
        for (int gamma = 1; gamma <= vcol.num_colors; ++gamma) {
            for (int alpha = 1; alpha <= palette; ++alpha) {
                std::vector<EdgeId> candidates;
                for (EdgeId e = 0; e < g.m(); ++e) {
                    if (col.color(e) != kUncolored) continue;
                    auto [u, v] = g.edge(e);
                    if ((vcol.color[u] == gamma || vcol.color[v] == gamma) &&
                        col.is_missing(u, alpha) && col.is_missing(v, alpha))
                        candidates.push_back(e);
                }
                if (!candidates.empty()) {
                    for (EdgeId e : maximal_matching(g, candidates, &en.ledger()))
                        col.set_color(e, alpha);
                    en.after_wave("matching");
                }
                std::vector<VertexId> incomplete;
                for (VertexId v : buckets[gamma])
                    if (col.uncolored_degree(v) > 0 && col.is_missing(v, alpha))
                        incomplete.push_back(v);
                if (incomplete.empty()) continue;

                HopColoring hop4 = hop_coloring(g, 4, static_cast<int>(limit4),
                                                &en.ledger(), &incomplete);
                FanSet active;
                std::vector<std::vector<VertexId>> hop_buckets(hop4.num_colors + 1);
                for (VertexId v : incomplete) hop_buckets[hop4.color[v]].push_back(v);
                for (int klass = 1; klass <= hop4.num_colors; ++klass) {
                    std::vector<NormalFan> grown;
                    for (VertexId v : hop_buckets[klass])
                        if (col.uncolored_degree(v) > 0 && col.is_missing(v, alpha))
                            grown.push_back(grow_normal_fan(col, v, alpha));
                    merge_fans(col, active, std::move(grown));
                    if (en.assert_standard()) en.verify_now("merge wave");
                }
                if (en.assert_standard()) check_merge_invariants(en, active, incomplete);

                std::vector<SubReverseFan> subs;
                for (ReverseFan& r : active.reverses) {
                    r.B = col.missing_colors(r.center, r.degree() + 1);
                    if (static_cast<int>(r.B.size()) < r.degree() / 2)
                        throw StructureError("reverse fan center misses too few colors");
                    auto split = split_sub_reverse(r);
                    subs.insert(subs.end(), split.begin(), split.end());
                }
                std::vector<AlphaBetaEdge> no_edges;
                process_item_classes(en, &active.normals, &active.normal_active, subs,
                                     no_edges);
            }
        }
        int after = col.uncolored_count();
        en.report().iterations.back().uncolored_after = after;
        if (after >= before)
            throw VerificationError("no progress in a full repair pass");
    }
}

void drive_alg4(Engine& en) {
    const Graph& g = en.g();
    PartialColoring& col = en.coloring();
    const int palette = col.palette();
    if (g.m() == 0) return;

    while (col.uncolored_count() > 0) {
        int before = col.uncolored_count();
        en.report().iterations.push_back({before, before});
        for (int alpha = 1; alpha <= palette; ++alpha) {
            std::vector<EdgeId> candidates;
            for (EdgeId e = 0; e < g.m(); ++e) {
                if (col.color(e) != kUncolored) continue;
                auto [u, v] = g.edge(e);
                if (col.is_missing(u, alpha) && col.is_missing(v, alpha))
                    candidates.push_back(e);
            }
            if (!candidates.empty()) {
                for (EdgeId e : maximal_matching(g, candidates, &en.ledger()))
                    col.set_color(e, alpha);
                en.after_wave("matching");
            }
            std::vector<VertexId> incomplete;
            for (VertexId v = 0; v < g.n(); ++v)
                if (col.uncolored_degree(v) > 0 && col.is_missing(v, alpha))
                    incomplete.push_back(v);
            if (incomplete.empty()) continue;
            std::vector<char> in_side(g.n(), 0);
            for (VertexId v : incomplete) in_side[v] = 1;

            // one active uncolored edge per incomplete vertex, merged into
            // reverse fans where they share the far endpoint
            std::map<VertexId, std::vector<std::pair<VertexId, EdgeId>>> groups;
            for (VertexId v : incomplete) {
                EdgeId lowest = -1;
                for (EdgeId e : g.incident(v))
                    if (col.color(e) == kUncolored && (lowest < 0 || e < lowest)) lowest = e;
                VertexId far = g.other(lowest, v);
                if (in_side[far])
                    throw StructureError("active edge between two alpha-missing vertices");
                groups[far].emplace_back(v, lowest);
            }
            std::vector<SubReverseFan> subs;
            std::vector<AlphaBetaEdge> items;
            for (auto& [far, members] : groups) {
                if (members.size() == 1) {
                    auto [v, e] = members[0];
                    items.push_back({v, far, e, alpha, col.missing_color(far)});
                } else {
                    ReverseFan r;
                    r.center = far;
                    r.alpha = alpha;
                    for (auto [v, e] : members) {
                        r.leaves.push_back(v);
                        r.edges.push_back(e);
                    }
                    r.built_version = col.version();
                    if (col.is_missing(far, alpha))
                        throw StructureError("reverse fan center misses alpha");
                    r.B = col.missing_colors(far, r.degree() + 1);
                    if (static_cast<int>(r.B.size()) < r.degree() / 2)
                        throw StructureError("reverse fan center misses too few colors");
                    auto split = split_sub_reverse(r);
                    subs.insert(subs.end(), split.begin(), split.end());
                }
            }
            process_item_classes(en, nullptr, nullptr, subs, items);
        }
        int after = col.uncolored_count();
        en.report().iterations.back().uncolored_after = after;
        if (after >= before)
            throw VerificationError("no progress in a full repair pass");
    }
}

}  // namespace

void merge_fans(PartialColoring& coloring, FanSet& active, std::vector<NormalFan> grown) {
    struct Owner {
        int kind;  // 0 normal, 1 reverse
        int idx;
    };
    std::map<VertexId, Owner> owner;
    for (int i = 0; i < static_cast<int>(active.normals.size()); ++i) {
        if (!active.normal_active[i]) continue;
        const NormalFan& fan = active.normals[i];
        owner[fan.center] = {0, i};
        for (VertexId x : fan.leaves) owner[x] = {0, i};
    }
    for (int i = 0; i < static_cast<int>(active.reverses.size()); ++i) {
        const ReverseFan& fan = active.reverses[i];
        owner[fan.center] = {1, i};
        for (VertexId x : fan.leaves) owner[x] = {1, i};
    }

    for (NormalFan& fan : grown) {
        int pos = -1;
        Owner hit{0, 0};
        for (int l = 0; l < fan.degree(); ++l) {
            auto it = owner.find(fan.leaves[l]);
            if (it != owner.end()) {
                pos = l;
                hit = it->second;
                break;
            }
        }
        if (pos < 0) {
            int idx = static_cast<int>(active.normals.size());
            owner[fan.center] = {0, idx};
            for (VertexId x : fan.leaves) owner[x] = {0, idx};
            active.normals.push_back(std::move(fan));
            active.normal_active.push_back(1);
            continue;
        }
        VertexId x = fan.leaves[pos];
        if (hit.kind == 0) {
            NormalFan& other = active.normals[hit.idx];
            if (x == other.center)
                throw StructureError("normal fans may only intersect at leaves");
            int pos_other = -1;
            for (int l = 0; l < other.degree(); ++l)
                if (other.leaves[l] == x) pos_other = l;
            if (pos_other < 0)
                throw StructureError("intersection vertex not a leaf of the active fan");
            shift(coloring, fan, pos + 1);
            shift(coloring, other, pos_other + 1);
            owner.erase(other.center);
            for (VertexId y : other.leaves) owner.erase(y);
            active.normal_active[hit.idx] = 0;

            ReverseFan reverse;
            reverse.center = x;
            reverse.alpha = fan.alpha;
            reverse.leaves = {other.center, fan.center};
            reverse.edges = {other.edges[pos_other], fan.edges[pos]};
            reverse.built_version = coloring.version();
            if (coloring.is_missing(x, reverse.alpha))
                throw StructureError("reverse fan center misses alpha");
            for (std::size_t l = 0; l < reverse.leaves.size(); ++l) {
                if (!coloring.is_missing(reverse.leaves[l], reverse.alpha) ||
                    coloring.color(reverse.edges[l]) != kUncolored)
                    throw StructureError("reverse fan leaves inconsistent after merge");
            }
            int idx = static_cast<int>(active.reverses.size());
            owner[x] = {1, idx};
            for (VertexId y : reverse.leaves) owner[y] = {1, idx};
            active.reverses.push_back(std::move(reverse));
        } else {
            ReverseFan& reverse = active.reverses[hit.idx];
            if (x != reverse.center)
                throw StructureError("new fan meets a reverse fan away from its center");
            shift(coloring, fan, pos + 1);
            if (!coloring.is_missing(fan.center, reverse.alpha) ||
                coloring.color(fan.edges[pos]) != kUncolored)
                throw StructureError("reverse fan extension inconsistent");
            reverse.leaves.push_back(fan.center);
            reverse.edges.push_back(fan.edges[pos]);
            reverse.built_version = coloring.version();
            owner[fan.center] = {1, hit.idx};
        }
    }
}

RunResult run_algorithm1(const Graph& g, const RunConfig& cfg) {
    RunConfig c = cfg;
    c.algorithm = Algorithm::kAlg1;
    Engine en(g, c, g.max_degree() + 1);
    try {
        drive_alg1(en);
    } catch (const Frozen&) {
    }
    return en.finish();
}

RunResult run_algorithm2(const Graph& g, const RunConfig& cfg) {
    RunConfig c = cfg;
    c.algorithm = Algorithm::kAlg2;
    Engine en(g, c, g.max_degree() + 1);
    try {
        drive_alg2(en);
    } catch (const Frozen&) {
    }
    return en.finish();
}

RunResult run_algorithm4(const Graph& g, const RunConfig& cfg) {
    if (!bipartition(g)) throw InputError("graph is not bipartite");
    RunConfig c = cfg;
    c.algorithm = Algorithm::kAlg4;
    Engine en(g, c, g.max_degree());
    try {
        drive_alg4(en);
    } catch (const Frozen&) {
    }
    return en.finish();
}

RunResult run(const Graph& g, const RunConfig& cfg) {
    switch (cfg.algorithm) {
        case Algorithm::kAlg1: return run_algorithm1(g, cfg);
        case Algorithm::kAlg2: return run_algorithm2(g, cfg);
        case Algorithm::kAlg4: return run_algorithm4(g, cfg);
    }
    throw ParameterError("unknown algorithm");
}

std::pair<std::vector<EdgeId>, std::vector<EdgeId>> euler_split(const Graph& g) {
    const int n = g.n();
    const int virt = n;
    struct Arc {
        int to;
        int edge;
    };
    std::vector<std::vector<Arc>> adj(n + 1);
    for (EdgeId e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edge(e);
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    int edge_count = g.m();
    for (VertexId v = 0; v < n; ++v) {
        if (g.degree(v) % 2 == 1) {
            adj[v].push_back({virt, edge_count});
            adj[virt].push_back({v, edge_count});
            ++edge_count;
        }
    }
    std::vector<char> used(edge_count, 0);
    std::vector<int> ptr(n + 1, 0);
    std::vector<int> side(g.m(), 0);
    for (int start = 0; start <= n; ++start) {
        while (ptr[start] < static_cast<int>(adj[start].size()) &&
               used[adj[start][ptr[start]].edge])
            ++ptr[start];
        if (ptr[start] == static_cast<int>(adj[start].size())) continue;
        std::vector<std::pair<int, int>> stack{{start, -1}};
        std::vector<int> circuit;
        while (!stack.empty()) {
            auto [v, in_edge] = stack.back();
            while (ptr[v] < static_cast<int>(adj[v].size()) && used[adj[v][ptr[v]].edge])
                ++ptr[v];
            if (ptr[v] == static_cast<int>(adj[v].size())) {
                stack.pop_back();
                if (in_edge >= 0) circuit.push_back(in_edge);
            } else {
                Arc arc = adj[v][ptr[v]];
                used[arc.edge] = 1;
                stack.emplace_back(arc.to, arc.edge);
            }
        }
        // alternate along the circuit; virtual edges advance the parity too
        int bit = 0;
        for (int e : circuit) {
            if (e < g.m()) side[e] = bit;
            bit ^= 1;
        }
    }
    std::pair<std::vector<EdgeId>, std::vector<EdgeId>> out;
    for (EdgeId e = 0; e < g.m(); ++e)
        (side[e] == 0 ? out.first : out.second).push_back(e);
    return out;
}

namespace {

Graph subgraph_of(const Graph& g, const std::vector<EdgeId>& edge_ids) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edge_ids.size());
    for (EdgeId e : edge_ids) pairs.push_back(g.edge(e));
    return Graph::from_edges(g.n(), std::move(pairs));
}

int max_degree_of(const Graph& g, const std::vector<EdgeId>& edge_ids) {
    std::vector<int> deg(g.n(), 0);
    int best = 0;
    for (EdgeId e : edge_ids) {
        auto [u, v] = g.edge(e);
        best = std::max({best, ++deg[u], ++deg[v]});
    }
    return best;
}

}  // namespace

SplitColorResult split_and_color(const Graph& g, double epsilon, const RunConfig& base) {
    SplitColorResult out;
    out.colors.assign(g.m(), kUncolored);
    if (g.m() == 0) {
        out.partition.push_back({});
        return out;
    }
    const int delta = g.max_degree();
    int z = 1;  // one blocking color beyond Delta+1 when loads stay at 1
    if (base.strategy.kind == StrategyKind::kGreedyPotential) {
        double d = delta_formula(g.n(), base.strategy.lambda);
        z = 2 * static_cast<int>(std::ceil((1.0 + d) / base.strategy.lambda)) - 1;
    }
    if (epsilon < static_cast<double>(z) / delta)
        throw ParameterError("epsilon below the conversion threshold z/Delta with z = " +
                             std::to_string(z));
    double eps = std::min(epsilon, 0.125);
    double threshold = 16.0 * (z + 8) / eps;
    int levels = 0;
    double eps_prime = 0.0;
    if (static_cast<double>(delta) > threshold) {
        eps_prime = eps / (32.0 * (std::log(static_cast<double>(delta)) /
                                   std::log(4.0 / 3.0)));
        double reach = delta;
        while (reach > threshold) {
            reach *= 0.5 + eps_prime;
            ++levels;
        }
    }
    out.levels = levels;
    out.epsilon_prime = eps_prime;

    std::vector<std::vector<EdgeId>> parts(1);
    parts[0].resize(g.m());
    for (EdgeId e = 0; e < g.m(); ++e) parts[0][e] = e;
    out.degree_trace.push_back({delta});
    for (int level = 1; level <= levels; ++level) {
        std::vector<std::vector<EdgeId>> next;
        std::vector<int> degrees;
        for (const auto& part : parts) {
            Graph sub = subgraph_of(g, part);
            auto [left, right] = euler_split(sub);
            std::vector<EdgeId> left_ids, right_ids;
            for (EdgeId e : left) left_ids.push_back(part[e]);
            for (EdgeId e : right) right_ids.push_back(part[e]);
            degrees.push_back(max_degree_of(g, left_ids));
            degrees.push_back(max_degree_of(g, right_ids));
            next.push_back(std::move(left_ids));
            next.push_back(std::move(right_ids));
        }
        parts = std::move(next);
        out.degree_trace.push_back(std::move(degrees));
    }
    out.partition = parts;

    int offset = 0;
    for (std::size_t s = 0; s < parts.size(); ++s) {
        Graph sub = subgraph_of(g, parts[s]);
        RunConfig cfg = base;
        cfg.seed = RngStream::mix(base.seed, 0x5e11f00dULL + s);
        RunResult result = run(sub, cfg);
        if (result.report.failed)
            throw StateError("base run froze while coloring a split subgraph");
        int span = 0;
        for (std::size_t i = 0; i < parts[s].size(); ++i) {
            int c = result.coloring.color(static_cast<EdgeId>(i));
            out.colors[parts[s][i]] = offset + c;
            span = std::max(span, c);
        }
        offset += span;
    }
    std::vector<char> used(offset + 1, 0);
    for (int c : out.colors) {
        if (c < 1) throw VerificationError("split coloring left an edge uncolored");
        used[c] = 1;
    }
    out.total_colors = static_cast<int>(std::count(used.begin(), used.end(), char(1)));
    if (!verify_colors(g, out.colors).empty())
        throw VerificationError("merged split coloring is improper");
    return out;
}

}  // namespace vizlocal
