#include "srr/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srr::lp {

namespace {

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr double eps = 1e-9;
    static bool is_neg(double v) { return v < -eps; }
    static bool is_pos(double v) { return v > eps; }
    static bool is_zero(double v) { return v >= -eps && v <= eps; }
    static double from_rat(const Rat& r) { return r.get_d(); }
};

template <>
struct ScalarOps<Rat> {
    static bool is_neg(const Rat& v) { return sgn(v) < 0; }
    static bool is_pos(const Rat& v) { return sgn(v) > 0; }
    static bool is_zero(const Rat& v) { return sgn(v) == 0; }
    static Rat from_rat(const Rat& r) { return r; }
};

// Dense two-phase tableau simplex. Column layout: structural variables,
// slacks for <= rows, artificials for == rows, then the RHS column.
// Row layout: constraints, phase-2 objective, phase-1 objective.
template <typename T>
class Simplex {
  public:
    explicit Simplex(const Problem& p)
        : m_(p.rows()),
          n_struct_(p.structural_cols()),
          slack0_(n_struct_),
          art0_(n_struct_ + p.num_le),
          ncols_(n_struct_ + p.num_le + p.num_eq),
          num_eq_(p.num_eq) {
        using Ops = ScalarOps<T>;
        for (const Rat& b : p.rhs)
            if (sgn(b) < 0) throw std::invalid_argument("lp rhs must be nonnegative");

        tab_.assign(m_ + 2, std::vector<T>(ncols_ + 1, T(0)));
        for (int j = 0; j < n_struct_; ++j)
            for (int r : p.columns[j]) tab_[r][j] = T(1);
        for (int i = 0; i < p.num_le; ++i) tab_[num_eq_ + i][slack0_ + i] = T(1);
        for (int r = 0; r < num_eq_; ++r) tab_[r][art0_ + r] = T(1);
        for (int r = 0; r < m_; ++r) tab_[r][ncols_] = Ops::from_rat(p.rhs[r]);

        for (int j : p.objective_cols) tab_[m_][j] = T(-1);
        // phase-1 objective row: z_j - c_j for maximize(-sum of artificials)
        // with the artificials basic.
        for (int r = 0; r < num_eq_; ++r)
            for (int j = 0; j <= ncols_; ++j) tab_[m_ + 1][j] -= tab_[r][j];
        for (int r = 0; r < num_eq_; ++r) tab_[m_ + 1][art0_ + r] = T(0);

        basis_.resize(m_);
        for (int i = 0; i < p.num_le; ++i) basis_[num_eq_ + i] = slack0_ + i;
        for (int r = 0; r < num_eq_; ++r) basis_[r] = art0_ + r;
        in_basis_.assign(ncols_, false);
        for (int c : basis_) in_basis_[c] = true;
        banned_.assign(ncols_, false);
    }

    SolveStatus run() {
        if (num_eq_ > 0) {
            SolveStatus s = iterate(m_ + 1);
            if (s != SolveStatus::optimal) return s;
            if (!phase1_feasible()) return SolveStatus::infeasible;
            drop_artificials();
        }
        return iterate(m_);
    }

    const std::vector<int>& basis() const { return basis_; }

    std::vector<T> structural_solution() const {
        std::vector<T> x(n_struct_, T(0));
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < n_struct_) x[basis_[r]] = tab_[r][ncols_];
        return x;
    }

    T objective() const { return tab_[m_][ncols_]; }

  private:
    using Ops = ScalarOps<T>;

    bool phase1_feasible() const {
        if constexpr (std::is_same_v<T, Rat>) {
            return sgn(tab_[m_ + 1][ncols_]) == 0;
        } else {
            return tab_[m_ + 1][ncols_] > -1e-7;
        }
    }

    bool is_artificial(int c) const { return c >= art0_; }

    // Entering column, or -1 at optimality. Bland's rule for exact
    // arithmetic; Dantzig switching to Bland late in the float path.
    int entering(int obj_row, long iter) const {
        const bool bland = std::is_same_v<T, Rat> || iter > bland_after_;
        int best = -1;
        T best_val = T(0);
        for (int j = 0; j < ncols_; ++j) {
            if (in_basis_[j] || banned_[j]) continue;
            if (obj_row == m_ && is_artificial(j)) continue;
            if (!Ops::is_neg(tab_[obj_row][j])) continue;
            if (bland) return j;
            if (best == -1 || tab_[obj_row][j] < best_val) {
                best = j;
                best_val = tab_[obj_row][j];
            }
        }
        return best;
    }

    // Leaving row by minimum ratio, ties broken on the smallest basic
    // column index (keeps Bland's rule anti-cycling intact).
    int leaving(int col) const {
        int row = -1;
        T best_ratio = T(0);
        for (int r = 0; r < m_; ++r) {
            if (!Ops::is_pos(tab_[r][col])) continue;
            T ratio = tab_[r][ncols_] / tab_[r][col];
            if (row == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basis_[r] < basis_[row])) {
                row = r;
                best_ratio = ratio;
            }
        }
        return row;
    }

    void pivot(int row, int col) {
        const T inv = T(1) / tab_[row][col];
        auto& prow = tab_[row];
        for (int j = 0; j <= ncols_; ++j) prow[j] *= inv;
        prow[col] = T(1);
        for (int r = 0; r <= m_ + 1; ++r) {
            if (r == row) continue;
            const T factor = tab_[r][col];
            if (factor == T(0)) continue;
            auto& trow = tab_[r];
            for (int j = 0; j <= ncols_; ++j)
                if (!(prow[j] == T(0))) trow[j] -= factor * prow[j];
            trow[col] = T(0);
        }
        const int old = basis_[row];
        in_basis_[old] = false;
        if (is_artificial(old)) banned_[old] = true;
        basis_[row] = col;
        in_basis_[col] = true;
    }

    SolveStatus iterate(int obj_row) {
        for (long iter = 0; iter < max_iter_; ++iter) {
            int col = entering(obj_row, iter);
            if (col < 0) return SolveStatus::optimal;
            int row = leaving(col);
            if (row < 0) return SolveStatus::unbounded;
            pivot(row, col);
        }
        return SolveStatus::iteration_limit;
    }

    // Pivot remaining zero-level artificials out of the basis after
    // phase 1 so the certified basis is artificial-free.
    void drop_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (!is_artificial(basis_[r])) continue;
            for (int j = 0; j < art0_; ++j) {
                if (in_basis_[j] || banned_[j]) continue;
                if (!Ops::is_zero(tab_[r][j])) {
                    pivot(r, j);
                    break;
                }
            }
        }
    }

    int m_, n_struct_, slack0_, art0_, ncols_, num_eq_;
    std::vector<std::vector<T>> tab_;
    std::vector<int> basis_;
    std::vector<char> in_basis_;
    std::vector<char> banned_;
    long bland_after_ = 0;
    long max_iter_ = 0;

  public:
    void set_limits(long bland_after, long max_iter) {
        bland_after_ = bland_after;
        max_iter_ = max_iter;
    }
};

// Exact Gaussian solve of a dense square system; returns false when
// singular.
bool solve_dense(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                 std::vector<Rat>& out) {
    const int n = static_cast<int>(a.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (sgn(a[r][col]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            if (sgn(a[r][col]) == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, Rat(0));
    for (int r = n - 1; r >= 0; --r) {
        Rat acc = b[r];
        for (int j = r + 1; j < n; ++j) acc -= a[r][j] * out[j];
        out[r] = acc / a[r][r];
    }
    return true;
}

}  // namespace

std::optional<Solution> certify_basis(const Problem& p,
                                      const std::vector<int>& basis) {
    const int m = p.rows();
    const int n = p.structural_cols();
    if (static_cast<int>(basis.size()) != m) return std::nullopt;

    std::vector<char> is_basic(n + p.num_le, false);
    std::vector<std::vector<Rat>> B(m, std::vector<Rat>(m, Rat(0)));
    std::vector<Rat> cb(m, Rat(0));
    std::vector<char> in_objective(n, false);
    for (int j : p.objective_cols) in_objective[j] = true;

    for (int i = 0; i < m; ++i) {
        const int col = basis[i];
        if (col < 0 || col >= n + p.num_le) return std::nullopt;  // artificial
        is_basic[col] = true;
        if (col < n) {
            for (int r : p.columns[col]) B[r][i] = 1;
            if (in_objective[col]) cb[i] = 1;
        } else {
            B[p.num_eq + (col - n)][i] = 1;
        }
    }

    std::vector<Rat> xb;
    if (!solve_dense(B, p.rhs, xb)) return std::nullopt;
    for (const Rat& v : xb)
        if (sgn(v) < 0) return std::nullopt;  // primal infeasible

    // duals: y solves B^T y = c_B
    std::vector<std::vector<Rat>> Bt(m, std::vector<Rat>(m));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) Bt[r][c] = B[c][r];
    std::vector<Rat> y;
    if (!solve_dense(std::move(Bt), cb, y)) return std::nullopt;

    // reduced costs of every nonbasic column must be <= 0
    for (int j = 0; j < n; ++j) {
        if (is_basic[j]) continue;
        Rat d = in_objective[j] ? 1 : 0;
        for (int r : p.columns[j]) d -= y[r];
        if (sgn(d) > 0) return std::nullopt;
    }
    for (int s = 0; s < p.num_le; ++s) {
        if (is_basic[n + s]) continue;
        if (sgn(y[p.num_eq + s]) < 0) return std::nullopt;
    }

    Solution sol;
    sol.status = SolveStatus::optimal;
    sol.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = xb[i];
    sol.objective = 0;
    for (int j : p.objective_cols) sol.objective += sol.x[j];
    return sol;
}

FloatSolution solve_float(const Problem& p) {
    Simplex<double> simplex(p);
    const long size = p.rows() + p.structural_cols();
    simplex.set_limits(20 * size + 200, 60 * size + 2000);
    FloatSolution fs;
    fs.status = simplex.run();
    if (fs.status == SolveStatus::optimal) {
        std::vector<double> x = simplex.structural_solution();
        fs.x = std::move(x);
        fs.objective = simplex.objective();
        fs.basis = simplex.basis();
    }
    return fs;
}

Solution solve_rational(const Problem& p, const SolverOptions& options) {
    if (options.float_warmstart) {
        FloatSolution fs = solve_float(p);
        if (fs.status == SolveStatus::optimal) {
            if (auto certified = certify_basis(p, fs.basis)) return *certified;
        }
    }
    Simplex<Rat> simplex(p);
    const long size = p.rows() + p.structural_cols();
    simplex.set_limits(0, 500 * size + 100000);
    Solution sol;
    sol.status = simplex.run();
    if (sol.status == SolveStatus::optimal) {
        sol.x = simplex.structural_solution();
        sol.objective = simplex.objective();
    }
    return sol;
}

}  // namespace srr::lp
