#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vizlocal/coloring.hpp"
#include "vizlocal/fan.hpp"
#include "vizlocal/rng.hpp"

namespace vizlocal {

enum class StrategyKind { kUniformRandom, kRandomEmpty, kGreedyPotential };
enum class Algorithm { kAlg1, kAlg2, kAlg4 };

std::string to_string(StrategyKind kind);
std::string to_string(Algorithm alg);

struct BlockingStrategy {
    StrategyKind kind = StrategyKind::kRandomEmpty;
    double lambda = 2.0;      // > 1
    double delta = 0.0;       // (1+delta) cost base for the greedy strategy
    bool strict_freeze = false;  // random_empty: fail below the T/15 threshold
};

// Picks the 1-based blocking index over the first T edges of path (|path| > T
// required). random_empty draws uniformly over the edges whose endpoints both
// have zero load and reports failure per the freeze mode; greedy_potential
// takes the argmin of (1+delta)^load(u) + (1+delta)^load(v), ties to the
// lowest index.
std::optional<long long> choose_blocking_edge(const AlternatingPath& path, long long T,
                                              const BlockingStrategy& strategy,
                                              const PartialColoring& coloring,
                                              RngStream& rng);

// Pessimistic estimator over vertex loads:
//   sum_v (1+delta)^{load(v)} * (1 + delta*(2/T))^{t-q} / (1+delta)^{(1+delta)/lambda}
double potential_phi(const std::vector<int>& loads, long long q, long long t, long long T,
                     double delta, double lambda);

// Incremental mirror of potential_phi: loads feed in as stars land, q advances
// once per repair-wave execution. Recomputed from scratch every 64 waves.
class PotentialState {
public:
    PotentialState() = default;
    PotentialState(int n, long long t, long long T, double delta, double lambda);

    void on_load_increment(int new_load);
    // Advances q and returns the new phi value.
    double end_wave();
    double phi() const;
    long long executions() const { return q_; }

    // From-scratch recomputation for drift checks.
    double recompute(const std::vector<int>& loads) const;

private:
    int n_ = 0;
    long long q_ = 0;
    long long t_ = 0;
    long long T_ = 1;
    double delta_ = 0.0;
    double lambda_ = 2.0;
    double sum_ = 0.0;  // sum_v (1+delta)^{load(v)}
};

// Paper parameter formulas, K = 1, logs base 2, n clamped to >= 2.
double t_formula(Algorithm alg, int delta, int n);
// (1+delta) = lambda * log2 n / (log2 lambda + log2 log2 n).
double delta_formula(int n, double lambda);
// Truncation length: random strategies pair with the per-algorithm t budget
// (uniform: ceil(t*lambda); random_empty: ceil(Delta^7 * t)); greedy uses
// 2*t*lambda.
long long default_T(Algorithm alg, StrategyKind kind, int delta, int n, double lambda);
long long greedy_T_from_budget(double t, double lambda);

}  // namespace vizlocal
