#include "vizlocal/strategy.hpp"

#include <cmath>

#include "vizlocal/error.hpp"

namespace vizlocal {

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::kUniformRandom: return "uniform";
        case StrategyKind::kRandomEmpty: return "empty";
        case StrategyKind::kGreedyPotential: return "greedy";
    }
    return "?";
}

std::string to_string(Algorithm alg) {
    switch (alg) {
        case Algorithm::kAlg1: return "alg1";
        case Algorithm::kAlg2: return "alg2";
        case Algorithm::kAlg4: return "alg4";
    }
    return "?";
}

std::optional<long long> choose_blocking_edge(const AlternatingPath& path, long long T,
                                              const BlockingStrategy& strategy,
                                              const PartialColoring& coloring,
                                              RngStream& rng) {
    if (path.length() <= T)
        throw UsageError("path within the truncation length needs no blocking edge");
    switch (strategy.kind) {
        case StrategyKind::kUniformRandom:
            return 1 + static_cast<long long>(rng.next_below(T));
        case StrategyKind::kRandomEmpty: {
            std::vector<long long> eligible;
            for (long long i = 1; i <= T; ++i) {
                VertexId u = path.vertices[i - 1];
                VertexId v = path.vertices[i];
                if (coloring.star_degree(u) == 0 && coloring.star_degree(v) == 0)
                    eligible.push_back(i);
            }
            bool frozen = strategy.strict_freeze
                              ? static_cast<double>(eligible.size()) < static_cast<double>(T) / 15.0
                              : eligible.empty();
            if (frozen) return std::nullopt;
            return eligible[rng.next_below(eligible.size())];
        }
        case StrategyKind::kGreedyPotential: {
            long long best = 1;
            double best_cost = 0.0;
            for (long long i = 1; i <= T; ++i) {
                VertexId u = path.vertices[i - 1];
                VertexId v = path.vertices[i];
                double cost = std::pow(1.0 + strategy.delta, coloring.star_degree(u)) +
                              std::pow(1.0 + strategy.delta, coloring.star_degree(v));
                if (i == 1 || cost < best_cost) {
                    best = i;
                    best_cost = cost;
                }
            }
            return best;
        }
    }
    throw UsageError("unknown strategy");
}

double potential_phi(const std::vector<int>& loads, long long q, long long t, long long T,
                     double delta, double lambda) {
    if (q < 0 || q > t) throw ParameterError("potential needs 0 <= q <= t");
    double base = 1.0 + delta;
    double sum = 0.0;
    for (int l : loads) sum += std::pow(base, l);
    double decay = std::pow(1.0 + delta * (2.0 / static_cast<double>(T)),
                            static_cast<double>(t - q));
    double denom = std::pow(base, base / lambda);
    return sum * decay / denom;
}

PotentialState::PotentialState(int n, long long t, long long T, double delta, double lambda)
    : n_(n), t_(t), T_(T), delta_(delta), lambda_(lambda), sum_(n) {}

void PotentialState::on_load_increment(int new_load) {
    double base = 1.0 + delta_;
    sum_ += std::pow(base, new_load) - std::pow(base, new_load - 1);
}

double PotentialState::phi() const {
    double decay = std::pow(1.0 + delta_ * (2.0 / static_cast<double>(T_)),
                            static_cast<double>(t_ - q_));
    return sum_ * decay / std::pow(1.0 + delta_, (1.0 + delta_) / lambda_);
}

double PotentialState::end_wave() {
    ++q_;
    return phi();
}

double PotentialState::recompute(const std::vector<int>& loads) const {
    double base = 1.0 + delta_;
    double sum = 0.0;
    for (int l : loads) sum += std::pow(base, l);
    double decay = std::pow(1.0 + delta_ * (2.0 / static_cast<double>(T_)),
                            static_cast<double>(t_ - q_));
    return sum * decay / std::pow(base, base / lambda_);
}

namespace {
double log2n(int n) { return std::log2(static_cast<double>(std::max(n, 2))); }
}  // namespace

double t_formula(Algorithm alg, int delta, int n) {
    double d = std::max(1, delta);
    switch (alg) {
        case Algorithm::kAlg1: return std::pow(d, 4) * log2n(n);
        case Algorithm::kAlg2: return std::pow(d, 3) * log2n(n);
        case Algorithm::kAlg4: return std::pow(d, 2) * log2n(n);
    }
    throw ParameterError("unknown algorithm");
}

double delta_formula(int n, double lambda) {
    if (lambda <= 1.0) throw ParameterError("lambda must exceed 1");
    double ln = log2n(n);
    double denom = std::log2(lambda) + std::log2(ln);
    double one_plus_delta = lambda * ln / denom;
    return std::max(one_plus_delta - 1.0, 1e-9);
}

long long greedy_T_from_budget(double t, double lambda) {
    return static_cast<long long>(std::ceil(2.0 * t * lambda));
}

long long default_T(Algorithm alg, StrategyKind kind, int delta, int n, double lambda) {
    if (lambda <= 1.0) throw ParameterError("lambda must exceed 1");
    double t = t_formula(alg, delta, n);
    double d = std::max(1, delta);
    switch (kind) {
        case StrategyKind::kUniformRandom:
            return static_cast<long long>(std::ceil(t * lambda));
        case StrategyKind::kRandomEmpty:
            return static_cast<long long>(std::ceil(std::pow(d, 7) * t));
        case StrategyKind::kGreedyPotential:
            return greedy_T_from_budget(t, lambda);
    }
    throw ParameterError("unknown strategy");
}

}  // namespace vizlocal
