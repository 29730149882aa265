#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

namespace frontier::lp {

enum class Sense { Le, Eq, Ge };

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Solver knobs. Defaults suit the small, often degenerate LPs produced by
/// DEA linearizations.
struct SolverSettings {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    int max_iterations = 10000;
    /// Switch to Bland's rule after this many consecutive degenerate pivots.
    int bland_after_degenerate = 50;
};

/// min c'x  s.t.  A x {<=,=,>=} b,  lower <= x <= upper.
/// Lower bounds default to 0; upper bounds are optional per variable.
struct StandardFormLp {
    Eigen::VectorXd objective;
    Eigen::MatrixXd constraints;
    Eigen::VectorXd rhs;
    std::vector<Sense> senses;
    Eigen::VectorXd lower;                          // defaults to zeros
    std::vector<std::optional<double>> upper;       // empty means all unbounded

    static StandardFormLp make(Eigen::VectorXd c, Eigen::MatrixXd a,
                               Eigen::VectorXd b, std::vector<Sense> senses);

    std::size_t num_vars() const { return static_cast<std::size_t>(objective.size()); }
    std::size_t num_rows() const { return static_cast<std::size_t>(rhs.size()); }

    /// Throws std::invalid_argument on any dimension or bound inconsistency.
    void validate() const;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;                 // meaningful only when Optimal
    Eigen::VectorXd primal;             // empty unless Optimal
    Eigen::VectorXd dual;               // one multiplier per constraint row, from the final basis
    int iterations = 0;

    bool optimal() const { return status == LpStatus::Optimal; }
};

/// Two-phase revised simplex over a dense basis inverse.
/// Throws std::invalid_argument for structural errors and
/// std::runtime_error when the iteration cap is hit.
LpSolution solve_lp(const StandardFormLp& problem, const SolverSettings& settings = {});

}  // namespace frontier::lp
