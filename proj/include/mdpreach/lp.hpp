#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mdpreach {

enum class LpSense { Min, Max };
enum class Rel { Le, Eq, Ge };

/// Solve outcomes. Numerical means the solver gave up (iteration cap or
/// unstable basis) and is never a silent wrong answer.
enum class LpStatus { Optimal, Infeasible, Unbounded, Numerical };

std::string to_string(LpStatus s);
std::string to_string(Rel r);

struct LpColumn {
    bool is_free = false;  // lower bound 0 unless free; upper bound +inf always
    std::string tag;
};

struct LpRow {
    std::vector<std::pair<int, double>> coeffs;  // sorted by column, unique
    Rel rel = Rel::Eq;
    double rhs = 0.0;
    std::string tag;
};

/**
 * Sparse linear program with equality/inequality rows, free and nonnegative
 * columns. Tags are opaque labels used by callers to map columns back to
 * (state, action) pairs and rows to constraint families.
 */
struct LinearProgram {
    LpSense sense = LpSense::Max;
    std::vector<LpColumn> columns;
    std::vector<std::pair<int, double>> objective;  // sparse, sorted by column
    std::vector<LpRow> rows;

    int add_column(bool is_free, std::string tag = {});
    void set_objective(int col, double coef);
    int add_row(Rel rel, double rhs, std::vector<std::pair<int, double>> coeffs,
                std::string tag = {});

    void check_well_formed() const;  // throws std::invalid_argument

    /// Textual dump, one row per line: `sense`, `col <id> <lb> <ub> <obj>`,
    /// `row <rel> <rhs> <col:coef>...`, with 17-digit numbers.
    std::string dump() const;
};

struct LpOptions {
    double pivot_tol = 1e-10;
    double feas_tol = 1e-9;
    long max_iterations = 0;  // 0 = automatic from problem size
    int refactor_every = 64;
    // Dantzig pricing switches to Bland's rule after bland_after iterations
    // (0 = automatic, 5*(rows+cols)).
    long bland_after = 0;
};

struct LpSolution {
    LpStatus status = LpStatus::Numerical;
    double objective = 0.0;
    std::vector<double> primal;  // per column
    std::vector<double> dual;    // per row (Lagrange multipliers)
    long iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double duality_gap = 0.0;
};

/// Deterministic two-phase primal simplex. Fixed pivoting rules make repeated
/// solves of the same program bit-identical.
LpSolution solve_lp(const LinearProgram& p, const LpOptions& opts = {});

}  // namespace mdpreach
