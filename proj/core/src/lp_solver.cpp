#include "topofolio/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace topofolio::opt {

void LinearProgram::add_constraint(std::vector<double> row, Relation rel, double b) {
    if (row.size() != num_vars)
        throw std::invalid_argument("LinearProgram: constraint row size mismatch");
    rows.push_back(std::move(row));
    relations.push_back(rel);
    rhs.push_back(b);
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kDegenerateSwitch = 500; // consecutive zero-progress pivots before Bland

// Full tableau with the objective row at index m; its rhs cell holds -z so
// that ordinary pivot row operations keep reduced costs and value consistent.
class Tableau {
public:
    Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_((m + 1) * (n + 1), 0.0) {}

    double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
    double& rhs(std::size_t i) { return t_[i * (n_ + 1) + n_]; }
    double rhs(std::size_t i) const { return t_[i * (n_ + 1) + n_]; }
    double& obj(std::size_t j) { return t_[m_ * (n_ + 1) + j]; }
    double obj(std::size_t j) const { return t_[m_ * (n_ + 1) + j]; }
    double& obj_rhs() { return t_[m_ * (n_ + 1) + n_]; }

    void pivot(std::size_t row, std::size_t col) {
        double* prow = &t_[row * (n_ + 1)];
        const double inv = 1.0 / prow[col];
        for (std::size_t j = 0; j <= n_; ++j) prow[j] *= inv;
        prow[col] = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == row) continue;
            double* r = &t_[i * (n_ + 1)];
            const double factor = r[col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) r[j] -= factor * prow[j];
            r[col] = 0.0;
        }
    }

    std::size_t cols() const { return n_; }
    std::size_t rows() const { return m_; }

private:
    std::size_t m_, n_;
    std::vector<double> t_;
};

struct SimplexState {
    Tableau tab;
    std::vector<std::size_t> basis;
    std::vector<bool> enterable;
    bool bland = false;
    int degenerate_run = 0;
    std::size_t iterations = 0;
    std::size_t iteration_cap = 0;
};

// Returns true on optimality, false on unboundedness.
bool run_simplex(SimplexState& s) {
    Tableau& T = s.tab;
    while (true) {
        std::size_t enter = T.cols();
        if (s.bland) {
            for (std::size_t j = 0; j < T.cols(); ++j)
                if (s.enterable[j] && T.obj(j) < -kPivotTol) { enter = j; break; }
        } else {
            double best = -kPivotTol;
            for (std::size_t j = 0; j < T.cols(); ++j)
                if (s.enterable[j] && T.obj(j) < best) { best = T.obj(j); enter = j; }
        }
        if (enter == T.cols()) return true;

        // Ratio test. Ties go to the smallest basis column under Bland's
        // rule, otherwise to the largest pivot element for stability.
        std::size_t leave = T.rows();
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < T.rows(); ++i) {
            const double a = T.at(i, enter);
            if (a <= kPivotTol) continue;
            const double ratio = T.rhs(i) / a;
            if (ratio < best_ratio - kPivotTol) {
                best_ratio = ratio;
                leave = i;
            } else if (ratio < best_ratio + kPivotTol && leave != T.rows()) {
                const bool take = s.bland ? s.basis[i] < s.basis[leave]
                                          : a > T.at(leave, enter);
                if (take) {
                    best_ratio = std::min(ratio, best_ratio);
                    leave = i;
                }
            }
        }
        if (leave == T.rows()) return false;

        // Bland's rule engages on long degenerate stalls and disengages as
        // soon as the objective moves again; every disengagement needs strict
        // progress, so no cycle survives.
        if (best_ratio < kPivotTol) {
            if (++s.degenerate_run >= kDegenerateSwitch) s.bland = true;
        } else {
            s.degenerate_run = 0;
            s.bland = false;
        }

        T.pivot(leave, enter);
        s.basis[leave] = enter;
        if (++s.iterations > s.iteration_cap)
            throw std::runtime_error("lp_solve: cycling guard tripped (iteration cap)");
    }
}

} // namespace

LpSolution lp_solve(const LinearProgram& lp) {
    const std::size_t m = lp.rows.size();
    const std::size_t n = lp.num_vars;
    if (lp.objective.size() != n)
        throw std::invalid_argument("lp_solve: objective size mismatch");
    for (double c : lp.objective)
        if (!std::isfinite(c)) throw std::invalid_argument("lp_solve: non-finite objective");
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(lp.rhs[i])) throw std::invalid_argument("lp_solve: non-finite rhs");
        for (double a : lp.rows[i])
            if (!std::isfinite(a)) throw std::invalid_argument("lp_solve: non-finite coefficient");
    }

    // Normalize to b >= 0; >= rows with zero rhs flip to <= rows so their
    // slack can start the basis instead of an artificial.
    std::vector<int> sign(m, 1);
    std::vector<Relation> rel(lp.relations);
    std::size_t n_slack = 0, n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.rhs[i] < 0.0 || (lp.rhs[i] == 0.0 && rel[i] == Relation::GreaterEq)) {
            sign[i] = -1;
            if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
            else if (rel[i] == Relation::GreaterEq) rel[i] = Relation::LessEq;
        }
        if (rel[i] != Relation::Equal) ++n_slack;
        if (rel[i] != Relation::LessEq) ++n_art;
    }

    const std::size_t total = n + n_slack + n_art;
    const std::size_t art_begin = n + n_slack;
    SimplexState s{Tableau(m, total), std::vector<std::size_t>(m),
                   std::vector<bool>(total, true), false, 0, 0,
                   20000 + 400 * (m + total)};
    Tableau& T = s.tab;

    std::size_t slack_col = n, art_col = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T.at(i, j) = sign[i] * lp.rows[i][j];
        T.rhs(i) = sign[i] * lp.rhs[i];
        switch (rel[i]) {
        case Relation::LessEq:
            T.at(i, slack_col) = 1.0;
            s.basis[i] = slack_col++;
            break;
        case Relation::GreaterEq:
            T.at(i, slack_col++) = -1.0;
            [[fallthrough]];
        case Relation::Equal:
            T.at(i, art_col) = 1.0;
            s.basis[i] = art_col++;
            break;
        }
    }

    // Phase 1: minimize the sum of artificials. Reduced costs follow from
    // subtracting every artificial-basic row from the cost row.
    if (n_art > 0) {
        for (std::size_t i = 0; i < m; ++i) {
            if (s.basis[i] < art_begin) continue;
            for (std::size_t j = 0; j < total; ++j) T.obj(j) -= T.at(i, j);
            T.obj_rhs() -= T.rhs(i);
        }
        for (std::size_t c = art_begin; c < total; ++c) T.obj(c) = 0.0;

        if (!run_simplex(s))
            throw std::runtime_error("lp_solve: phase 1 unbounded (internal error)");
        if (-T.obj_rhs() > kFeasTol) {
            LpSolution sol;
            sol.status = LpStatus::Infeasible;
            return sol;
        }

        // Drive remaining zero-level artificials out of the basis where a
        // real pivot exists; all-zero rows are redundant constraints.
        for (std::size_t i = 0; i < m; ++i) {
            if (s.basis[i] < art_begin) continue;
            for (std::size_t j = 0; j < art_begin; ++j) {
                if (std::abs(T.at(i, j)) > kPivotTol) {
                    T.pivot(i, j);
                    s.basis[i] = j;
                    break;
                }
            }
        }
        for (std::size_t c = art_begin; c < total; ++c) s.enterable[c] = false;
    }

    // Phase 2: reduced costs of the real objective under the current basis.
    std::vector<double> cost(total, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        cost[j] = lp.maximize ? -lp.objective[j] : lp.objective[j];
    for (std::size_t j = 0; j < total; ++j) {
        double v = cost[j];
        for (std::size_t i = 0; i < m; ++i)
            if (cost[s.basis[i]] != 0.0) v -= cost[s.basis[i]] * T.at(i, j);
        T.obj(j) = v;
    }
    {
        double z = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (cost[s.basis[i]] != 0.0) z += cost[s.basis[i]] * T.rhs(i);
        T.obj_rhs() = -z;
    }
    s.degenerate_run = 0;
    s.bland = false;

    LpSolution sol;
    if (!run_simplex(s)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (s.basis[i] < n) sol.x[s.basis[i]] = T.rhs(i);
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * sol.x[j];
    sol.objective = obj;
    return sol;
}

} // namespace topofolio::opt
