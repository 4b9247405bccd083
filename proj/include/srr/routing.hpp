#pragma once

#include <vector>

#include "srr/rational.hpp"
#include "srr/storage_model.hpp"

namespace srr {

// Per-file request arrival rates, length K.
struct DemandVector {
    std::vector<Rat> lambda;

    DemandVector() = default;
    explicit DemandVector(std::vector<Rat> l) : lambda(std::move(l)) {}
    int size() const { return static_cast<int>(lambda.size()); }
    Rat total() const { return sum(lambda); }
};

// alpha[k][i]: fraction of file k's requests routed to its i-th repair
// group. Rows of files with positive demand must sum to 1; zero-demand
// files may carry unnormalized (e.g. all-zero) rows.
struct SplittingStrategy {
    std::vector<std::vector<Rat>> alpha;

    static SplittingStrategy zeros(const RepairGroupTable& table);
};

struct NodeLoadVector {
    std::vector<Rat> load;

    int size() const { return static_cast<int>(load.size()); }
};

// Row-sum check for files with positive demand, within eps_norm
// (default exact).
bool strategy_rows_normalized(const RepairGroupTable& table,
                              const SplittingStrategy& strategy,
                              const DemandVector& demand,
                              const Rat& eps_norm = 0);

// load[j] = sum_k sum_i alpha[k][i] * [j in R_ki] * lambda_k.
// Throws std::invalid_argument on shape mismatch.
NodeLoadVector node_loads(const RepairGroupTable& table,
                          const SplittingStrategy& strategy,
                          const DemandVector& demand, int node_count);

// True iff every node load stays within mu + eps_feas (default exact).
bool is_feasible_with_strategy(const RepairGroupTable& table,
                               const SplittingStrategy& strategy,
                               const DemandVector& demand, int node_count,
                               const Rat& mu, const Rat& eps_feas = 0);

}  // namespace srr
