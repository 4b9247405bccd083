#include "srr/lp_oracle.hpp"

#include <atomic>
#include <stdexcept>
#include <utility>

namespace srr {

namespace {

std::atomic<long> g_solves{0};
std::atomic<long> g_fallbacks{0};

lp::Solution solve_exact_tracked(const lp::Problem& p) {
    ++g_solves;
    lp::FloatSolution fs = lp::solve_float(p);
    if (fs.status == lp::SolveStatus::optimal) {
        if (auto certified = lp::certify_basis(p, fs.basis)) return *certified;
    }
    ++g_fallbacks;
    return lp::solve_rational(p, {.float_warmstart = false});
}

struct RateProblem {
    lp::Problem problem;
    // column -> (file, group index)
    std::vector<std::pair<int, int>> col_group;
};

// Rate-space formulation. Files listed in eq_files get an equality row
// pinning their total rate; objective_file (if >= 0) contributes free
// columns maximized in the objective.
RateProblem build_rate_problem(const StorageSystem& system,
                               const RepairGroupTable& table,
                               const std::vector<std::pair<int, Rat>>& eq_files,
                               int objective_file) {
    RateProblem rp;
    lp::Problem& p = rp.problem;
    const int N = system.node_count();
    p.num_eq = static_cast<int>(eq_files.size());
    p.num_le = N;
    p.rhs.reserve(p.num_eq + N);
    for (const auto& [file, lambda] : eq_files) {
        (void)file;
        p.rhs.push_back(lambda);
    }
    for (int j = 0; j < N; ++j) p.rhs.push_back(system.mu);

    auto add_columns = [&](int file, int eq_row, bool in_objective) {
        for (int i = 0; i < table.gamma(file); ++i) {
            std::vector<int> rows;
            if (eq_row >= 0) rows.push_back(eq_row);
            for (NodeId j : table.groups[file][i].members)
                rows.push_back(p.num_eq + j);
            if (in_objective)
                p.objective_cols.push_back(static_cast<int>(p.columns.size()));
            p.columns.push_back(std::move(rows));
            rp.col_group.emplace_back(file, i);
        }
    };
    for (int r = 0; r < static_cast<int>(eq_files.size()); ++r)
        add_columns(eq_files[r].first, r, false);
    if (objective_file >= 0) add_columns(objective_file, -1, true);
    return rp;
}

SplittingStrategy strategy_from_rates(const RepairGroupTable& table,
                                      const RateProblem& rp,
                                      const std::vector<Rat>& x,
                                      const std::vector<Rat>& per_file_total) {
    SplittingStrategy strategy = SplittingStrategy::zeros(table);
    for (int c = 0; c < static_cast<int>(x.size()); ++c) {
        const auto& [k, i] = rp.col_group[c];
        if (per_file_total[k] > 0) strategy.alpha[k][i] = x[c] / per_file_total[k];
    }
    return strategy;
}

std::vector<NodeId> find_binding_nodes(const RepairGroupTable& table,
                                       const SplittingStrategy& strategy,
                                       const DemandVector& demand,
                                       const StorageSystem& system,
                                       const LpMode& mode) {
    NodeLoadVector loads = node_loads(table, strategy, demand, system.node_count());
    std::vector<NodeId> binding;
    for (int j = 0; j < loads.size(); ++j) {
        bool at_capacity = mode.is_rational()
                               ? loads.load[j] == system.mu
                               : abs(loads.load[j] - system.mu) <= mode.tol;
        if (at_capacity) binding.push_back(j);
    }
    return binding;
}

void validate_demand(const StorageSystem& system, const std::vector<Rat>& values,
                     int expected_len) {
    (void)system;
    if (static_cast<int>(values.size()) != expected_len)
        throw std::invalid_argument("demand length mismatch");
    for (const Rat& v : values)
        if (v < 0) throw std::invalid_argument("demand must be nonnegative");
}

std::vector<Rat> rates_from_float(const lp::FloatSolution& fs) {
    std::vector<Rat> x;
    x.reserve(fs.x.size());
    for (double v : fs.x) x.push_back(v <= 0 ? Rat(0) : rat_from_double(v));
    return x;
}

}  // namespace

FeasibilityWitness feasible(const StorageSystem& system,
                            const RepairGroupTable& table,
                            const DemandVector& demand, const LpMode& mode) {
    validate_demand(system, demand.lambda, system.K);
    if (table.file_count() != system.K)
        throw std::invalid_argument("table does not match system");

    FeasibilityWitness witness;
    std::vector<std::pair<int, Rat>> eq_files;
    for (int k = 0; k < system.K; ++k) {
        if (demand.lambda[k] == 0) continue;
        if (table.gamma(k) == 0) return witness;  // unservable file
        eq_files.emplace_back(k, demand.lambda[k]);
    }
    if (eq_files.empty()) {
        witness.feasible = true;
        witness.strategy = SplittingStrategy::zeros(table);
        witness.binding_nodes =
            find_binding_nodes(table, *witness.strategy, demand, system, mode);
        return witness;
    }

    RateProblem rp = build_rate_problem(system, table, eq_files, -1);
    std::vector<Rat> x;
    if (mode.is_rational()) {
        lp::Solution sol = solve_exact_tracked(rp.problem);
        if (sol.status != lp::SolveStatus::optimal) return witness;
        x = std::move(sol.x);
    } else {
        ++g_solves;
        lp::FloatSolution fs = lp::solve_float(rp.problem);
        if (fs.status == lp::SolveStatus::infeasible) return witness;
        if (fs.status != lp::SolveStatus::optimal) {
            ++g_fallbacks;  // numerically stuck; decide exactly
            lp::Solution sol = lp::solve_rational(rp.problem);
            if (sol.status != lp::SolveStatus::optimal) return witness;
            x = std::move(sol.x);
        } else {
            x = rates_from_float(fs);
        }
    }

    witness.feasible = true;
    witness.strategy =
        strategy_from_rates(table, rp, x, demand.lambda);
    witness.binding_nodes =
        find_binding_nodes(table, *witness.strategy, demand, system, mode);
    return witness;
}

MaximizeResult maximize_last(const StorageSystem& system,
                             const RepairGroupTable& table,
                             const std::vector<Rat>& lambda_hat,
                             const LpMode& mode) {
    validate_demand(system, lambda_hat, system.K - 1);
    if (table.file_count() != system.K)
        throw std::invalid_argument("table does not match system");
    const int last = system.K - 1;

    MaximizeResult result;
    std::vector<std::pair<int, Rat>> eq_files;
    for (int k = 0; k < last; ++k) {
        if (lambda_hat[k] == 0) continue;
        if (table.gamma(k) == 0) return result;
        eq_files.emplace_back(k, lambda_hat[k]);
    }

    RateProblem rp = build_rate_problem(system, table, eq_files, last);
    std::vector<Rat> x;
    Rat L;
    if (mode.is_rational()) {
        lp::Solution sol = solve_exact_tracked(rp.problem);
        if (sol.status != lp::SolveStatus::optimal) return result;
        x = std::move(sol.x);
        L = sol.objective;
    } else {
        ++g_solves;
        lp::FloatSolution fs = lp::solve_float(rp.problem);
        if (fs.status == lp::SolveStatus::optimal) {
            x = rates_from_float(fs);
            L = 0;
            for (int c : rp.problem.objective_cols) L += x[c];
        } else if (fs.status == lp::SolveStatus::infeasible) {
            return result;
        } else {
            ++g_fallbacks;
            lp::Solution sol = lp::solve_rational(rp.problem);
            if (sol.status != lp::SolveStatus::optimal) return result;
            x = std::move(sol.x);
            L = sol.objective;
        }
    }

    result.status = MaximizeResult::Status::ok;
    result.L = L;

    DemandVector full_demand;
    full_demand.lambda = lambda_hat;
    full_demand.lambda.push_back(L);
    std::vector<Rat> totals = full_demand.lambda;
    result.witness.feasible = true;
    result.witness.strategy = strategy_from_rates(table, rp, x, totals);
    result.witness.binding_nodes = find_binding_nodes(
        table, *result.witness.strategy, full_demand, system, mode);
    return result;
}

Rat total_capacity_bound(const StorageSystem& system) {
    return Rat(system.node_count()) * system.mu;
}

OracleStats oracle_stats() { return {g_solves.load(), g_fallbacks.load()}; }

void reset_oracle_stats() {
    g_solves = 0;
    g_fallbacks = 0;
}

}  // namespace srr
