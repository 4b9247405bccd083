#pragma once

#include <optional>
#include <vector>

#include "srr/rational.hpp"

namespace srr::lp {

// Linear program over a 0/1 constraint matrix:
//
//   maximize   sum_{j in objective_cols} x_j
//   s.t.       sum_{j : r in columns[j]} x_j  ==  rhs[r]   for r <  num_eq
//              sum_{j : r in columns[j]} x_j  <=  rhs[r]   for r >= num_eq
//              x >= 0
//
// rhs must be nonnegative (demand rates and service rates always are).
struct Problem {
    int num_eq = 0;
    int num_le = 0;
    std::vector<std::vector<int>> columns;  // per column: sorted row indices
    std::vector<Rat> rhs;
    std::vector<int> objective_cols;

    int rows() const { return num_eq + num_le; }
    int structural_cols() const { return static_cast<int>(columns.size()); }
};

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
    SolveStatus status = SolveStatus::iteration_limit;
    Rat objective;
    std::vector<Rat> x;  // structural variables
};

struct FloatSolution {
    SolveStatus status = SolveStatus::iteration_limit;
    double objective = 0;
    std::vector<double> x;
    std::vector<int> basis;  // basic column per row (slack cols appended)
};

struct SolverOptions {
    // Solve in doubles first and certify the final basis exactly; fall back
    // to the all-rational Bland simplex when certification fails. Turning
    // this off forces the all-rational path.
    bool float_warmstart = true;
};

// Exact simplex over rationals (Bland's rule), optionally accelerated by a
// float run whose final basis is recomputed and certified in exact
// arithmetic. Results are exact in either path.
Solution solve_rational(const Problem& p, const SolverOptions& options = {});

// Plain floating-point simplex (pivot tolerance 1e-9).
FloatSolution solve_float(const Problem& p);

// Recomputes the basic solution for the given basis in exact arithmetic and
// checks primal feasibility and optimality. Returns the exact solution if
// the basis certifies, nullopt otherwise.
std::optional<Solution> certify_basis(const Problem& p,
                                      const std::vector<int>& basis);

}  // namespace srr::lp
