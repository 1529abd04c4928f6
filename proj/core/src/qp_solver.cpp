#include "topofolio/qp_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace topofolio::opt {

namespace {

constexpr double kZeroTol = 1e-13;
constexpr double kDualTol = 1e-11;
constexpr double kResidualContract = 1e-8;

struct EqpSolution {
    Eigen::VectorXd w; // values on the free set
    double nu = 0.0;   // multiplier of the budget constraint
};

// Minimize w'Qw + c'w over the free set subject to sum(w) = 1:
// stationarity 2*Q_FF*w + c_F = nu*1 gives w = (nu*a - b)/2 with
// a = Q_FF^-1 1, b = Q_FF^-1 c_F and nu fixed by the budget.
EqpSolution solve_eqp(const Eigen::MatrixXd& Qff, const Eigen::VectorXd& cf) {
    Eigen::LLT<Eigen::MatrixXd> llt(Qff);
    Eigen::VectorXd a, b;
    if (llt.info() == Eigen::Success) {
        a = llt.solve(Eigen::VectorXd::Ones(Qff.rows()));
        b = llt.solve(cf);
    } else {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(Qff);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("qp_solve: matrix is not positive definite");
        a = ldlt.solve(Eigen::VectorXd::Ones(Qff.rows()));
        b = ldlt.solve(cf);
    }
    const double denom = a.sum();
    if (!(denom > 0.0))
        throw std::runtime_error("qp_solve: matrix is not positive definite");
    EqpSolution sol;
    sol.nu = (2.0 + b.sum()) / denom;
    sol.w = 0.5 * (sol.nu * a - b);
    return sol;
}

} // namespace

QpResult qp_solve(const std::vector<double>& Q, const std::vector<double>& c) {
    const std::size_t n = c.size();
    if (n == 0) throw std::invalid_argument("qp_solve: empty problem");
    if (Q.size() != n * n) throw std::invalid_argument("qp_solve: Q must be n x n");

    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        Qm(Q.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::Map<const Eigen::VectorXd> cv(c.data(), static_cast<Eigen::Index>(n));
    if ((Qm - Qm.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + Qm.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("qp_solve: Q must be symmetric");

    std::vector<std::size_t> free(n);
    std::iota(free.begin(), free.end(), std::size_t{0});
    Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                  1.0 / static_cast<double>(n));
    double nu = 0.0;
    const std::size_t cap = 50 * n + 200;
    std::size_t iter = 0;

    while (true) {
        if (++iter > cap) break;

        const auto f = static_cast<Eigen::Index>(free.size());
        Eigen::MatrixXd Qff(f, f);
        Eigen::VectorXd cf(f);
        for (Eigen::Index r = 0; r < f; ++r) {
            cf(r) = cv(static_cast<Eigen::Index>(free[static_cast<std::size_t>(r)]));
            for (Eigen::Index s = 0; s < f; ++s)
                Qff(r, s) = Qm(static_cast<Eigen::Index>(free[static_cast<std::size_t>(r)]),
                               static_cast<Eigen::Index>(free[static_cast<std::size_t>(s)]));
        }
        EqpSolution eqp = solve_eqp(Qff, cf);

        double min_target = 0.0;
        for (Eigen::Index r = 0; r < f; ++r) min_target = std::min(min_target, eqp.w(r));

        if (min_target >= -kZeroTol) {
            // accept the equality-constrained optimum on the free set
            Eigen::VectorXd next = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
            for (Eigen::Index r = 0; r < f; ++r)
                next(static_cast<Eigen::Index>(free[static_cast<std::size_t>(r)])) =
                    std::max(eqp.w(r), 0.0);
            w = next;
            nu = eqp.nu;

            // dual check on the bound-active set
            Eigen::VectorXd grad = 2.0 * (Qm * w) + cv;
            double worst = -kDualTol;
            std::size_t worst_idx = n;
            std::vector<bool> is_free(n, false);
            for (std::size_t i : free) is_free[i] = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (is_free[i]) continue;
                const double mu = grad(static_cast<Eigen::Index>(i)) - nu;
                if (mu < worst) { worst = mu; worst_idx = i; }
            }
            if (worst_idx == n) break; // KKT satisfied
            free.push_back(worst_idx);
            std::sort(free.begin(), free.end());
        } else {
            // step to the first blocking bound, then shrink the free set
            double alpha = 1.0;
            for (Eigen::Index r = 0; r < f; ++r) {
                if (eqp.w(r) >= 0.0) continue;
                const double cur = w(static_cast<Eigen::Index>(free[static_cast<std::size_t>(r)]));
                const double a = cur / (cur - eqp.w(r));
                alpha = std::min(alpha, a);
            }
            Eigen::VectorXd target = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
            for (Eigen::Index r = 0; r < f; ++r)
                target(static_cast<Eigen::Index>(free[static_cast<std::size_t>(r)])) = eqp.w(r);
            w += alpha * (target - w);
            std::vector<std::size_t> shrunk;
            shrunk.reserve(free.size());
            for (std::size_t i : free) {
                if (w(static_cast<Eigen::Index>(i)) > kZeroTol) shrunk.push_back(i);
                else w(static_cast<Eigen::Index>(i)) = 0.0;
            }
            if (shrunk.empty()) break; // numerical stall, reported via residual
            free = std::move(shrunk);
        }
    }

    QpResult res;
    res.w.assign(w.data(), w.data() + n);
    res.objective = (w.transpose() * Qm * w).value() + cv.dot(w);
    res.iterations = iter;

    // KKT residual: stationarity on the support, dual feasibility off it,
    // complementarity, budget and bounds.
    Eigen::VectorXd grad = 2.0 * (Qm * w) + cv;
    double nu_hat = 0.0;
    std::size_t support = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (w(static_cast<Eigen::Index>(i)) > kZeroTol) {
            nu_hat += grad(static_cast<Eigen::Index>(i));
            ++support;
        }
    nu_hat = support > 0 ? nu_hat / static_cast<double>(support) : nu;

    double residual = std::abs(w.sum() - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w(static_cast<Eigen::Index>(i));
        const double mu = grad(static_cast<Eigen::Index>(i)) - nu_hat;
        residual = std::max(residual, -wi);
        if (wi > kZeroTol) residual = std::max(residual, std::abs(mu));
        else residual = std::max(residual, std::max(0.0, -mu));
        residual = std::max(residual, std::abs(mu * wi));
    }
    res.kkt_residual = residual;

    if (residual > kResidualContract)
        throw std::runtime_error("qp_solve: iteration budget exhausted, best KKT residual " +
                                 std::to_string(residual));
    return res;
}

} // namespace topofolio::opt
