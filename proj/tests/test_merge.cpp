#include <doctest.h>

#include "merge_gadgets.hpp"
#include "oracles.hpp"
#include "vizlocal/engine.hpp"
#include "vizlocal/error.hpp"

using namespace vizlocal;

TEST_CASE("non-intersecting fans just become active") {
    Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    PartialColoring col(g, 2);
    FanSet active;
    merge_fans(col, active, {grow_normal_fan(col, 0, 1), grow_normal_fan(col, 2, 1)});
    CHECK(active.normals.size() == 2);
    CHECK(active.reverses.empty());
    CHECK(col.uncolored_count() == 2);
}

TEST_CASE("two normal fans meeting at a leaf become a reverse fan") {
    gadgets::MergeScenario sc(3, 2, 0, 0);
    int uncolored = sc.col.uncolored_count();
    FanSet active = sc.run();
    REQUIRE(active.reverses.size() == 1);
    const ReverseFan& r = active.reverses[0];
    CHECK(r.center == sc.x);
    CHECK(r.leaves == std::vector<VertexId>{sc.w, sc.v});
    CHECK(active.normal_active == std::vector<char>{0, 0});
    gadgets::check_disjoint_and_counted(sc, active, uncolored);
}

TEST_CASE("a fan meeting a reverse fan donates its rotated edge") {
    gadgets::MergeScenario sc(2, 2, 2, 0);
    int uncolored = sc.col.uncolored_count();
    FanSet active = sc.run();
    REQUIRE(active.reverses.size() == 1);
    const ReverseFan& r = active.reverses[0];
    CHECK(r.degree() == 4);  // w, v, then the two chain centers
    CHECK(r.leaves[2] == sc.chain_centers[0]);
    CHECK(r.leaves[3] == sc.chain_centers[1]);
    gadgets::check_disjoint_and_counted(sc, active, uncolored);
}

TEST_CASE("degree-one fans collide directly at the shared leaf") {
    gadgets::MergeScenario sc(1, 1, 0, 0);
    int uncolored = sc.col.uncolored_count();
    CHECK(uncolored == 2);
    FanSet active = sc.run();
    REQUIRE(active.reverses.size() == 1);
    CHECK(active.reverses[0].degree() == 2);
    gadgets::check_disjoint_and_counted(sc, active, uncolored);
}

TEST_CASE("200 constructed merge scenarios hold the invariants") {
    int ran = 0;
    for (int p = 1; p <= 6; ++p) {
        for (int q = 1; q <= 6; ++q) {
            for (int chain = 0; chain <= 2; ++chain) {
                for (int slack = 0; slack <= 1; ++slack) {
                    gadgets::MergeScenario sc(p, q, chain, slack);
                    int uncolored = sc.col.uncolored_count();
                    FanSet active = sc.run();
                    CHECK(active.reverses.size() == 1);
                    CHECK(active.reverses[0].degree() == 2 + chain);
                    gadgets::check_disjoint_and_counted(sc, active, uncolored);
                    ++ran;
                }
            }
        }
    }
    CHECK(ran == 216);
}

TEST_CASE("merged reverse fans split and repair") {
    gadgets::MergeScenario sc(2, 3, 1, 0);
    FanSet active = sc.run();
    ReverseFan& r = active.reverses[0];
    r.B = sc.col.missing_colors(r.center, r.degree() + 1);
    REQUIRE(static_cast<int>(r.B.size()) >= r.degree() / 2);
    auto subs = split_sub_reverse(r);
    REQUIRE(subs.size() == 1);  // three leaves make one sub-fan
    auto state = sub_fan_state(sc.col, subs[0]);
    REQUIRE(state != SubFanState::kDestroyed);
    BlockingChooser never = [](const AlternatingPath&) -> std::optional<long long> {
        throw StructureError("no blocking expected");
    };
    RepairResult res = repair_sub_reverse_fan(sc.col, subs[0], 1000, never);
    CHECK(res.colored);
    CHECK(sc.col.verify_proper().empty());
}

TEST_CASE("claim violations are structure errors") {
    // a fresh fan whose first intersection would be a reverse fan's leaf
    Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {3, 1}, {3, 4}});
    PartialColoring col(g, 3);
    FanSet active;
    ReverseFan r;
    r.center = 0;
    r.alpha = 1;
    r.leaves = {1, 2};
    r.edges = {g.find_edge(0, 1), g.find_edge(0, 2)};
    col.set_color(g.find_edge(3, 4), 1);  // keeps alpha present at 3's fan walk
    active.reverses.push_back(r);
    // vertex 3 grows a fan whose first leaf is 1, a leaf of the reverse fan
    NormalFan f = grow_normal_fan(col, 3, 2, g.find_edge(3, 1));
    CHECK_THROWS_AS(merge_fans(col, active, {f}), StructureError);
}
