#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vizlocal/error.hpp"
#include "vizlocal/strategy.hpp"

using namespace vizlocal;

namespace {

// Long path graph with edges colored 1,2,1,2,... plus a starred pendant edge
// at each loaded vertex; the alternating walk from vertex 0 spans the path.
struct PathRig {
    int n;
    std::vector<VertexId> loaded;
    Graph g;
    PartialColoring col;
    AlternatingPath path;
    explicit PathRig(int n_, std::vector<VertexId> loaded_ = {})
        : n(n_), loaded(std::move(loaded_)), g(build(n, loaded)), col(g, 4) {
        for (int i = 0; i + 1 < n; ++i)
            col.set_color(g.find_edge(i, i + 1), i % 2 == 0 ? 1 : 2);
        for (std::size_t i = 0; i < loaded.size(); ++i)
            col.set_color(g.find_edge(loaded[i], n + static_cast<int>(i)), kStar);
        path = walk_alternating_path(col, 0, 1, 2);
    }
    static Graph build(int n, const std::vector<VertexId>& loaded) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        int extra = n;
        for (VertexId v : loaded) edges.emplace_back(v, extra++);
        return Graph::from_edges(extra, edges);
    }
};

}  // namespace

TEST_CASE("blocking requires an overlong path") {
    PathRig rig(6);
    BlockingStrategy s;
    s.kind = StrategyKind::kUniformRandom;
    RngStream rng(1);
    CHECK_THROWS_AS(choose_blocking_edge(rig.path, 10, s, rig.col, rng), UsageError);
}

TEST_CASE("uniform strategy draws inside the window") {
    PathRig rig(40);
    BlockingStrategy s;
    s.kind = StrategyKind::kUniformRandom;
    RngStream rng(7);
    for (int i = 0; i < 200; ++i) {
        auto pick = choose_blocking_edge(rig.path, 5, s, rig.col, rng);
        REQUIRE(pick.has_value());
        CHECK(*pick >= 1);
        CHECK(*pick <= 5);
    }
}

TEST_CASE("greedy strategy takes the cheapest edge, lowest index first") {
    SUBCASE("all loads zero ties to index one") {
        PathRig rig(40);
        BlockingStrategy s;
        s.kind = StrategyKind::kGreedyPotential;
        s.delta = 1.5;
        RngStream rng(1);
        CHECK(choose_blocking_edge(rig.path, 7, s, rig.col, rng) == 1);
    }
    SUBCASE("a loaded endpoint repels the choice") {
        PathRig rig(40, {0, 1});  // loads at the first two path vertices
        BlockingStrategy s;
        s.kind = StrategyKind::kGreedyPotential;
        s.delta = 0.5;
        RngStream rng(1);
        // edge 1 has loads (1,1), edge 2 has (1,0), edge 3 has (0,0)
        CHECK(choose_blocking_edge(rig.path, 7, s, rig.col, rng) == 3);
    }
}

TEST_CASE("random empty strategy avoids occupied vertices uniformly") {
    const int T = 30;
    PathRig rig(80, {5});  // vertex 5 occupied: window edges 5 and 6 ineligible
    BlockingStrategy s;
    s.kind = StrategyKind::kRandomEmpty;
    RngStream rng(1234);
    std::vector<long long> hits(T + 1, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        auto pick = choose_blocking_edge(rig.path, T, s, rig.col, rng);
        REQUIRE(pick.has_value());
        VertexId u = rig.path.vertices[*pick - 1];
        VertexId v = rig.path.vertices[*pick];
        CHECK(u != 5);
        CHECK(v != 5);
        ++hits[*pick];
    }
    CHECK(hits[5] == 0);
    CHECK(hits[6] == 0);
    int eligible = T - 2;
    double expected = static_cast<double>(draws) / eligible;
    double chi2 = 0.0;
    for (int i = 1; i <= T; ++i) {
        if (i == 5 || i == 6) continue;
        double d = hits[i] - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 80.0);  // df = 27; even p = 1e-6 sits near 65
}

TEST_CASE("random empty freeze thresholds") {
    BlockingStrategy s;
    s.kind = StrategyKind::kRandomEmpty;
    RngStream rng(5);

    // every window edge touches a load: permissive mode freezes
    PathRig jammed(80, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
    CHECK(!choose_blocking_edge(jammed.path, 16, s, jammed.col, rng).has_value());

    // 3 eligible of 5 clears the strict threshold 5/15
    s.strict_freeze = true;
    PathRig mild(80, {1});
    CHECK(choose_blocking_edge(mild.path, 5, s, mild.col, rng).has_value());

    // 28 eligible of 450 misses the strict threshold 30
    std::vector<VertexId> odd;
    for (int i = 1; i < 422; i += 2) odd.push_back(i);
    PathRig wide(500, odd);
    CHECK(!choose_blocking_edge(wide.path, 450, s, wide.col, rng).has_value());
    // permissive mode would still proceed there
    s.strict_freeze = false;
    CHECK(choose_blocking_edge(wide.path, 450, s, wide.col, rng).has_value());
}

TEST_CASE("potential formula plug-ins") {
    // single vertex, zero load, budget exhausted
    double phi = potential_phi({0}, 10, 10, 100, 1.5, 2.0);
    CHECK(phi == doctest::Approx(std::pow(2.5, -2.5 / 2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(potential_phi({0}, 5, 4, 10, 1.0, 2.0), ParameterError);

    std::vector<int> loads{0, 1, 2, 0};
    double direct = potential_phi(loads, 3, 9, 40, 0.7, 2.0);
    double sum = 0;
    for (int l : loads) sum += std::pow(1.7, l);
    double expect = sum * std::pow(1.0 + 0.7 * 2.0 / 40.0, 6) / std::pow(1.7, 1.7 / 2.0);
    CHECK(direct == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("incremental potential matches the recompute oracle") {
    const int n = 50;
    PotentialState state(n, 200, 80, 1.2, 2.0);
    std::vector<int> loads(n, 0);
    RngStream rng(17);
    for (int wave = 0; wave < 150; ++wave) {
        if (rng.next_below(3) != 0) {
            int v = static_cast<int>(rng.next_below(n));
            loads[v] += 1;
            state.on_load_increment(loads[v]);
        }
        state.end_wave();
        double fresh = state.recompute(loads);
        CHECK(std::abs(fresh - state.phi()) <=
              1e-12 * std::max({std::abs(fresh), std::abs(state.phi()), 1.0}));
    }
    CHECK(state.executions() == 150);
}

TEST_CASE("paper parameter formulas") {
    // alg1, random_empty, Delta=4, n=256: t = 4^4 * 8 = 2048, T = 4^7 * t
    CHECK(t_formula(Algorithm::kAlg1, 4, 256) == doctest::Approx(2048.0));
    CHECK(default_T(Algorithm::kAlg1, StrategyKind::kRandomEmpty, 4, 256, 2.0) ==
          33554432LL);
    CHECK(greedy_T_from_budget(100.0, 4.0) == 800LL);
    // (1+delta) = 2*16/(1+4) = 6.4 at n = 2^16, lambda = 2
    CHECK(delta_formula(65536, 2.0) == doctest::Approx(5.4).epsilon(1e-12));
    CHECK(t_formula(Algorithm::kAlg2, 3, 256) == doctest::Approx(27.0 * 8));
    CHECK(t_formula(Algorithm::kAlg4, 3, 256) == doctest::Approx(9.0 * 8));
    CHECK(default_T(Algorithm::kAlg2, StrategyKind::kUniformRandom, 2, 16, 3.0) ==
          static_cast<long long>(std::ceil(8.0 * 4 * 3)));
    CHECK_THROWS_AS(delta_formula(100, 1.0), ParameterError);
    CHECK_THROWS_AS(default_T(Algorithm::kAlg1, StrategyKind::kGreedyPotential, 4, 16, 0.5),
                    ParameterError);
}
