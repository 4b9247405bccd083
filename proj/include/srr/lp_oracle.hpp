#pragma once

#include <optional>
#include <vector>

#include "srr/lp.hpp"
#include "srr/routing.hpp"
#include "srr/storage_model.hpp"

namespace srr {

struct LpMode {
    enum class Kind { exact_rational, floating };
    Kind kind = Kind::exact_rational;
    Rat tol = 0;  // feasibility tolerance in floating mode

    static LpMode rational() { return {Kind::exact_rational, 0}; }
    static LpMode floating(const Rat& tol = frac(1, 1000000000)) {
        if (tol <= 0) throw std::invalid_argument("float mode needs tol > 0");
        return {Kind::floating, tol};
    }
    bool is_rational() const { return kind == Kind::exact_rational; }
};

struct FeasibilityWitness {
    bool feasible = false;
    std::optional<SplittingStrategy> strategy;
    std::vector<NodeId> binding_nodes;  // nodes loaded at exactly mu
};

// Decides whether the demand vector admits a splitting strategy keeping
// every node at or below mu. Formulated in rate space (variables r_ki with
// sum_i r_ki = lambda_k, per-node capacity rows); the witness strategy is
// recovered as alpha_ki = r_ki / lambda_k.
FeasibilityWitness feasible(const StorageSystem& system,
                            const RepairGroupTable& table,
                            const DemandVector& demand, const LpMode& mode);

struct MaximizeResult {
    enum class Status { ok, infeasible_demand };
    Status status = Status::infeasible_demand;
    Rat L;  // valid when ok
    FeasibilityWitness witness;

    bool ok() const { return status == Status::ok; }
};

// L(lambda_hat): the largest demand for the last file given fixed demands
// for the first K-1 files. Returns infeasible_demand when (lambda_hat, 0)
// is already outside the region.
MaximizeResult maximize_last(const StorageSystem& system,
                             const RepairGroupTable& table,
                             const std::vector<Rat>& lambda_hat,
                             const LpMode& mode);

// N * mu, an outer bound on any per-file demand.
Rat total_capacity_bound(const StorageSystem& system);

// Process-wide counters, handy when watching how often the float warmstart
// certifies vs. falls back to the all-rational simplex.
struct OracleStats {
    long solves = 0;
    long exact_fallbacks = 0;
};
OracleStats oracle_stats();
void reset_oracle_stats();

}  // namespace srr
