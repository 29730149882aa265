#include "frontier/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace frontier::lp {

StandardFormLp StandardFormLp::make(Eigen::VectorXd c, Eigen::MatrixXd a,
                                    Eigen::VectorXd b, std::vector<Sense> senses) {
    StandardFormLp p;
    p.objective = std::move(c);
    p.constraints = std::move(a);
    p.rhs = std::move(b);
    p.senses = std::move(senses);
    p.lower = Eigen::VectorXd::Zero(p.objective.size());
    p.upper.assign(static_cast<std::size_t>(p.objective.size()), std::nullopt);
    p.validate();
    return p;
}

void StandardFormLp::validate() const {
    const auto rows = static_cast<std::size_t>(constraints.rows());
    const auto cols = static_cast<std::size_t>(constraints.cols());
    if (rows != static_cast<std::size_t>(rhs.size()) || rows != senses.size())
        throw std::invalid_argument("lp: constraint rows, rhs length and senses length disagree");
    if (cols != static_cast<std::size_t>(objective.size()))
        throw std::invalid_argument("lp: objective length does not match constraint columns");
    if (static_cast<std::size_t>(lower.size()) != cols)
        throw std::invalid_argument("lp: lower bound vector has wrong length");
    if (!upper.empty() && upper.size() != cols)
        throw std::invalid_argument("lp: upper bound vector has wrong length");
    for (std::size_t j = 0; j < upper.size(); ++j) {
        if (upper[j] && *upper[j] < lower[static_cast<Eigen::Index>(j)])
            throw std::invalid_argument("lp: variable " + std::to_string(j) +
                                        " has upper bound below lower bound");
    }
}

namespace {

// Working problem after bound shifting and upper-bound row expansion:
// min c'x  s.t.  W x {<=,=,>=} b,  x >= 0.
struct Working {
    Eigen::MatrixXd a;           // m x n structural columns
    Eigen::VectorXd b;           // >= 0 after row negation
    Eigen::VectorXd c;
    std::vector<Sense> senses;
    std::vector<bool> negated;   // row was multiplied by -1
    double shift_constant = 0.0; // c'l from the lower-bound shift
    std::size_t original_rows = 0;
};

Working prepare(const StandardFormLp& p) {
    Working w;
    const Eigen::Index n = p.objective.size();
    const Eigen::Index m0 = p.constraints.rows();
    w.original_rows = static_cast<std::size_t>(m0);

    std::vector<Eigen::Index> bounded;
    for (std::size_t j = 0; j < p.upper.size(); ++j)
        if (p.upper[j]) bounded.push_back(static_cast<Eigen::Index>(j));

    const Eigen::Index m = m0 + static_cast<Eigen::Index>(bounded.size());
    w.a.setZero(m, n);
    w.b.setZero(m);
    w.senses.assign(static_cast<std::size_t>(m), Sense::Le);
    w.negated.assign(static_cast<std::size_t>(m), false);

    // Shift x = lower + x', so rhs' = rhs - A*lower and upper' = upper - lower.
    w.a.topRows(m0) = p.constraints;
    w.b.head(m0) = p.rhs - p.constraints * p.lower;
    for (Eigen::Index i = 0; i < m0; ++i) w.senses[static_cast<std::size_t>(i)] = p.senses[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < bounded.size(); ++k) {
        const Eigen::Index r = m0 + static_cast<Eigen::Index>(k);
        w.a(r, bounded[k]) = 1.0;
        w.b(r) = *p.upper[static_cast<std::size_t>(bounded[k])] - p.lower(bounded[k]);
    }

    w.c = p.objective;
    w.shift_constant = p.objective.dot(p.lower);

    for (Eigen::Index i = 0; i < m; ++i) {
        if (w.b(i) < 0.0) {
            w.a.row(i) = -w.a.row(i);
            w.b(i) = -w.b(i);
            w.negated[static_cast<std::size_t>(i)] = true;
            auto& s = w.senses[static_cast<std::size_t>(i)];
            if (s == Sense::Le) s = Sense::Ge;
            else if (s == Sense::Ge) s = Sense::Le;
        }
    }
    return w;
}

// Revised simplex state over the augmented column set
// [structural | slack/surplus | artificial].
class Simplex {
public:
    Simplex(const Working& w, const SolverSettings& settings)
        : w_(w), set_(settings), m_(w.a.rows()) {
        const Eigen::Index n = w.a.cols();
        Eigen::Index num_slack = 0;
        for (auto s : w.senses)
            if (s != Sense::Eq) ++num_slack;

        cols_.setZero(m_, n + num_slack);
        cols_.leftCols(n) = w.a;
        slack_of_row_.assign(static_cast<std::size_t>(m_), -1);
        Eigen::Index sc = n;
        for (Eigen::Index i = 0; i < m_; ++i) {
            switch (w.senses[static_cast<std::size_t>(i)]) {
                case Sense::Le: cols_(i, sc) = 1.0; slack_of_row_[static_cast<std::size_t>(i)] = sc++; break;
                case Sense::Ge: cols_(i, sc) = -1.0; slack_of_row_[static_cast<std::size_t>(i)] = sc++; break;
                case Sense::Eq: break;
            }
        }
        total_ = cols_.cols();
        structural_ = n;
    }

    // Returns the overall status; fills primal_ and basis duals.
    LpStatus run() {
        build_initial_basis();
        if (num_artificial_ > 0) {
            phase_ = 1;
            LpStatus st = iterate();
            if (st != LpStatus::Optimal)
                throw std::runtime_error("lp: phase one terminated abnormally");
            if (phase_objective() > set_.feasibility_tol) return LpStatus::Infeasible;
            purge_artificials();
        }
        phase_ = 2;
        degenerate_streak_ = 0;
        return iterate();
    }

    Eigen::VectorXd primal() const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(structural_);
        for (Eigen::Index i = 0; i < m_; ++i)
            if (basis_[static_cast<std::size_t>(i)] < structural_)
                x(basis_[static_cast<std::size_t>(i)]) = xb_(i);
        return x;
    }

    // y = c_B' B^{-1}, one entry per working row.
    Eigen::VectorXd dual() const {
        Eigen::VectorXd cb(m_);
        for (Eigen::Index i = 0; i < m_; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
        return binv_.transpose() * cb;
    }

    int iterations() const { return iterations_; }

private:
    double cost(Eigen::Index j) const {
        if (phase_ == 1) return j >= total_ ? 1.0 : 0.0;
        return j >= structural_ ? 0.0 : w_.c(j);
    }

    bool is_artificial(Eigen::Index j) const { return j >= total_; }

    double phase_objective() const {
        double v = 0.0;
        for (Eigen::Index i = 0; i < m_; ++i)
            if (is_artificial(basis_[static_cast<std::size_t>(i)])) v += xb_(i);
        return v;
    }

    Eigen::VectorXd column(Eigen::Index j) const {
        if (j < total_) return cols_.col(j);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
        e(artificial_row_[static_cast<std::size_t>(j - total_)]) = 1.0;
        return e;
    }

    void build_initial_basis() {
        basis_.clear();
        artificial_row_.clear();
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (w_.senses[static_cast<std::size_t>(i)] == Sense::Le) {
                basis_.push_back(slack_of_row_[static_cast<std::size_t>(i)]);
            } else {
                basis_.push_back(total_ + static_cast<Eigen::Index>(artificial_row_.size()));
                artificial_row_.push_back(i);
            }
        }
        num_artificial_ = static_cast<Eigen::Index>(artificial_row_.size());
        binv_ = Eigen::MatrixXd::Identity(m_, m_);
        xb_ = w_.b;
    }

    void refactorize() {
        Eigen::MatrixXd basis_mat(m_, m_);
        for (Eigen::Index i = 0; i < m_; ++i) basis_mat.col(i) = column(basis_[static_cast<std::size_t>(i)]);
        binv_ = basis_mat.fullPivLu().inverse();
        xb_ = binv_ * w_.b;
        for (Eigen::Index i = 0; i < m_; ++i)
            if (xb_(i) < 0.0 && xb_(i) > -set_.feasibility_tol) xb_(i) = 0.0;
    }

    // Entering column or -1 when optimal. Dantzig by default, Bland under a
    // long degenerate streak.
    Eigen::Index price(const Eigen::VectorXd& y, bool bland) const {
        Eigen::Index best = -1;
        double best_val = -set_.optimality_tol;
        for (Eigen::Index j = 0; j < total_; ++j) {
            if (phase_ == 2 && basic_mask_[static_cast<std::size_t>(j)]) continue;
            if (basic_mask_[static_cast<std::size_t>(j)]) continue;
            const double d = cost(j) - y.dot(cols_.col(j));
            if (d < -set_.optimality_tol) {
                if (bland) return j;
                if (d < best_val) {
                    best_val = d;
                    best = j;
                }
            }
        }
        return best;
    }

    LpStatus iterate() {
        rebuild_basic_mask();
        while (true) {
            if (iterations_ >= set_.max_iterations)
                throw std::runtime_error("lp: iteration limit exceeded (" +
                                         std::to_string(set_.max_iterations) + ")");
            const bool bland = degenerate_streak_ >= set_.bland_after_degenerate;
            const Eigen::VectorXd y = dual();
            const Eigen::Index enter = price(y, bland);
            if (enter < 0) return LpStatus::Optimal;

            const Eigen::VectorXd w = binv_ * cols_.col(enter);
            Eigen::Index leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (w(i) > set_.feasibility_tol) {
                    const double ratio = std::max(xb_(i), 0.0) / w(i);
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && leave >= 0 &&
                         tie_break(i, leave, bland))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                if (phase_ == 1)
                    throw std::runtime_error("lp: unbounded phase-one subproblem");
                return LpStatus::Unbounded;
            }

            pivot(leave, enter, w, best_ratio);
        }
    }

    // Under Bland, prefer the smallest leaving *variable* index; otherwise
    // the smallest row index keeps the iterate sequence deterministic.
    bool tie_break(Eigen::Index candidate, Eigen::Index incumbent, bool bland) const {
        if (bland)
            return basis_[static_cast<std::size_t>(candidate)] < basis_[static_cast<std::size_t>(incumbent)];
        return candidate < incumbent;
    }

    void pivot(Eigen::Index r, Eigen::Index enter, const Eigen::VectorXd& w, double theta) {
        degenerate_streak_ = theta <= set_.feasibility_tol ? degenerate_streak_ + 1 : 0;

        basic_mask_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
        basic_mask_[static_cast<std::size_t>(enter)] = true;
        basis_[static_cast<std::size_t>(r)] = enter;

        const Eigen::RowVectorXd pivot_row = binv_.row(r) / w(r);
        for (Eigen::Index i = 0; i < m_; ++i)
            if (i != r) binv_.row(i) -= w(i) * pivot_row;
        binv_.row(r) = pivot_row;

        for (Eigen::Index i = 0; i < m_; ++i)
            if (i != r) xb_(i) = std::max(xb_(i) - theta * w(i), 0.0);
        xb_(r) = theta;

        ++iterations_;
        if (iterations_ % 64 == 0) refactorize();
    }

    void rebuild_basic_mask() {
        basic_mask_.assign(static_cast<std::size_t>(total_), false);
        for (auto b : basis_)
            if (b < total_) basic_mask_[static_cast<std::size_t>(b)] = true;
    }

    // After a feasible phase one, pivot leftover artificials out of the
    // basis; rows that admit no pivot are linearly dependent and their
    // artificial stays pinned at zero (excluded from phase-two pricing).
    void purge_artificials() {
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[static_cast<std::size_t>(i)])) continue;
            const Eigen::RowVectorXd row = binv_.row(i) * cols_;
            Eigen::Index pivot_col = -1;
            for (Eigen::Index j = 0; j < total_; ++j) {
                if (basic_mask_[static_cast<std::size_t>(j)]) continue;
                if (std::abs(row(j)) > 1e-7) {
                    pivot_col = j;
                    break;
                }
            }
            if (pivot_col >= 0) {
                Eigen::VectorXd w = binv_ * cols_.col(pivot_col);
                pivot(i, pivot_col, w, 0.0);
            }
        }
        rebuild_basic_mask();
    }

    const Working& w_;
    SolverSettings set_;
    Eigen::Index m_;
    Eigen::MatrixXd cols_;
    Eigen::Index total_ = 0;
    Eigen::Index structural_ = 0;
    Eigen::Index num_artificial_ = 0;
    std::vector<Eigen::Index> slack_of_row_;
    std::vector<Eigen::Index> artificial_row_;
    std::vector<Eigen::Index> basis_;
    std::vector<bool> basic_mask_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd xb_;
    int phase_ = 1;
    int iterations_ = 0;
    int degenerate_streak_ = 0;
};

}  // namespace

LpSolution solve_lp(const StandardFormLp& problem, const SolverSettings& settings) {
    problem.validate();
    LpSolution out;

    const Working w = prepare(problem);

    // No constraints at all: variables sit at a bound or the problem is unbounded.
    if (w.a.rows() == 0) {
        for (Eigen::Index j = 0; j < w.c.size(); ++j) {
            if (w.c(j) < -settings.optimality_tol) {
                out.status = LpStatus::Unbounded;
                return out;
            }
        }
        out.status = LpStatus::Optimal;
        out.primal = problem.lower;
        out.value = w.shift_constant;
        out.dual = Eigen::VectorXd::Zero(0);
        return out;
    }

    Simplex simplex(w, settings);
    const LpStatus status = simplex.run();
    out.status = status;
    out.iterations = simplex.iterations();
    if (status != LpStatus::Optimal) return out;

    const Eigen::VectorXd shifted = simplex.primal();
    out.primal = shifted + problem.lower;
    out.value = problem.objective.dot(out.primal);

    const Eigen::VectorXd y = simplex.dual();
    out.dual.resize(static_cast<Eigen::Index>(w.original_rows));
    for (std::size_t i = 0; i < w.original_rows; ++i)
        out.dual(static_cast<Eigen::Index>(i)) = w.negated[i] ? -y(static_cast<Eigen::Index>(i))
                                                              : y(static_cast<Eigen::Index>(i));
    return out;
}

}  // namespace frontier::lp
