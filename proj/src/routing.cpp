#include "srr/routing.hpp"

#include <stdexcept>

namespace srr {

SplittingStrategy SplittingStrategy::zeros(const RepairGroupTable& table) {
    SplittingStrategy s;
    s.alpha.resize(table.file_count());
    for (int k = 0; k < table.file_count(); ++k)
        s.alpha[k].assign(table.gamma(k), Rat(0));
    return s;
}

namespace {

void check_shapes(const RepairGroupTable& table, const SplittingStrategy& strategy,
                  const DemandVector& demand) {
    if (demand.size() != table.file_count())
        throw std::invalid_argument("demand length does not match file count");
    if (static_cast<int>(strategy.alpha.size()) != table.file_count())
        throw std::invalid_argument("strategy file count mismatch");
    for (int k = 0; k < table.file_count(); ++k)
        if (static_cast<int>(strategy.alpha[k].size()) != table.gamma(k))
            throw std::invalid_argument("strategy row length mismatch");
}

}  // namespace

bool strategy_rows_normalized(const RepairGroupTable& table,
                              const SplittingStrategy& strategy,
                              const DemandVector& demand, const Rat& eps_norm) {
    check_shapes(table, strategy, demand);
    for (int k = 0; k < table.file_count(); ++k) {
        if (demand.lambda[k] <= 0) continue;
        Rat row_sum = 0;
        for (const Rat& a : strategy.alpha[k]) {
            if (a < 0) return false;
            row_sum += a;
        }
        if (abs(row_sum - 1) > eps_norm) return false;
    }
    return true;
}

NodeLoadVector node_loads(const RepairGroupTable& table,
                          const SplittingStrategy& strategy,
                          const DemandVector& demand, int node_count) {
    check_shapes(table, strategy, demand);
    NodeLoadVector loads;
    loads.load.assign(node_count, Rat(0));
    for (int k = 0; k < table.file_count(); ++k) {
        if (demand.lambda[k] == 0) continue;
        for (int i = 0; i < table.gamma(k); ++i) {
            const Rat& a = strategy.alpha[k][i];
            if (a == 0) continue;
            Rat rate = a * demand.lambda[k];
            for (NodeId j : table.groups[k][i].members) {
                if (j < 0 || j >= node_count)
                    throw std::invalid_argument("group member outside node range");
                loads.load[j] += rate;
            }
        }
    }
    return loads;
}

bool is_feasible_with_strategy(const RepairGroupTable& table,
                               const SplittingStrategy& strategy,
                               const DemandVector& demand, int node_count,
                               const Rat& mu, const Rat& eps_feas) {
    NodeLoadVector loads = node_loads(table, strategy, demand, node_count);
    for (const Rat& l : loads.load)
        if (l > mu + eps_feas) return false;
    return true;
}

}  // namespace srr
