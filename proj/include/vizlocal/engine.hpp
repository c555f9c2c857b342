#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vizlocal/coloring.hpp"
#include "vizlocal/fan.hpp"
#include "vizlocal/locality.hpp"
#include "vizlocal/strategy.hpp"

namespace vizlocal {

// debug verifies after every repair, standard after every wave, fast only at
// the end of the run.
enum class AssertLevel { kFast, kStandard, kDebug };

struct RunConfig {
    Algorithm algorithm = Algorithm::kAlg1;
    BlockingStrategy strategy;
    bool explicit_T = false;
    long long T = 0;  // used when explicit_T
    std::uint64_t seed = 0;
    AssertLevel assert_level = AssertLevel::kStandard;
    // Test hook: nonzero shuffles the within-wave repair order with this seed.
    std::uint64_t shuffle_waves = 0;
};

struct IterationStat {
    int uncolored_before = 0;
    int uncolored_after = 0;
};

struct RunReport {
    std::string algorithm;
    int n = 0;
    int m = 0;
    int delta = 0;
    std::string strategy;
    long long T = 0;
    std::string T_mode;
    double lambda = 0.0;
    double delta_param = 0.0;
    std::uint64_t seed = 0;
    int colors_used = 0;
    int ell_G = 0;
    std::vector<IterationStat> iterations;
    long long repair_executions = 0;
    std::vector<double> phi_trace;  // greedy runs only
    RoundLedger ledger;
    bool failed = false;
};

struct RunResult {
    PartialColoring coloring;
    RunReport report;
};

RunResult run_algorithm1(const Graph& g, const RunConfig& cfg);
RunResult run_algorithm2(const Graph& g, const RunConfig& cfg);
RunResult run_algorithm4(const Graph& g, const RunConfig& cfg);
RunResult run(const Graph& g, const RunConfig& cfg);

// Active fans during the merge phase. Deactivated normal fans keep their slot.
struct FanSet {
    std::vector<NormalFan> normals;
    std::vector<char> normal_active;
    std::vector<ReverseFan> reverses;
};

// Folds freshly grown fans (one 4-hop color class, pairwise far apart) into
// the active set: a fan meeting an active normal fan at a leaf turns both
// into a reverse fan there; a fan meeting a reverse fan's center donates its
// rotated edge. Leaves the number of uncolored edges unchanged.
void merge_fans(PartialColoring& coloring, FanSet& active, std::vector<NormalFan> grown);

// One Euler split: partitions the edges into two halves with per-vertex side
// degree at most ceil(deg/2)+1.
std::pair<std::vector<EdgeId>, std::vector<EdgeId>> euler_split(const Graph& g);

struct SplitColorResult {
    std::vector<int> colors;  // per original edge, over pairwise disjoint palettes
    int total_colors = 0;
    int levels = 0;
    double epsilon_prime = 0.0;
    // max degree of every subgraph per recursion level, level 0 = input
    std::vector<std::vector<int>> degree_trace;
    // edge id partition of the leaf subgraphs
    std::vector<std::vector<EdgeId>> partition;
};

// Recursively Euler-splits until the lemma threshold, colors the parts with
// the base algorithm under disjoint palettes, and merges. Total colors stay
// within (1+epsilon) * Delta.
SplitColorResult split_and_color(const Graph& g, double epsilon, const RunConfig& base);

std::string report_to_json(const RunReport& report);

}  // namespace vizlocal
