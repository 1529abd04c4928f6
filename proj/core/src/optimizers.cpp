#include "topofolio/optimizers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "topofolio/lp_solver.hpp"
#include "topofolio/qp_solver.hpp"

namespace topofolio::opt {

namespace {

Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
map_matrix(const std::vector<double>& m, std::size_t n) {
    return {m.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)};
}

// CVaR of a discrete loss sample in the Rockafellar-Uryasev minimization
// form min_zeta zeta + E(l - zeta)^+/(1-alpha) -- the quantity the scenario
// LPs optimize. The minimum sits at a loss breakpoint.
double scenario_cvar(const std::vector<double>& losses, double alpha) {
    const double T = static_cast<double>(losses.size());
    double best = std::numeric_limits<double>::infinity();
    for (double zeta : losses) {
        double tail = 0.0;
        for (double l : losses) tail += std::max(l - zeta, 0.0);
        best = std::min(best, zeta + tail / ((1.0 - alpha) * T));
    }
    return best;
}

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace

Weights Weights::normalized() const {
    Weights out = *this;
    double sum = 0.0;
    for (double& x : out.w) {
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    if (!(sum > 0.0)) throw std::runtime_error("Weights::normalized: zero total weight");
    for (double& x : out.w) x /= sum;
    return out;
}

std::size_t Weights::nonzero_count() const {
    return static_cast<std::size_t>(std::count_if(w.begin(), w.end(),
                                                  [](double x) { return x > 0.0; }));
}

void Weights::check_invariants() const {
    if (assets.size() != w.size())
        throw std::runtime_error("Weights: asset/weight length mismatch");
    double sum = 0.0;
    for (double x : w) {
        if (x < -1e-12) throw std::runtime_error("Weights: negative weight");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::runtime_error("Weights: budget violated, sum = " + std::to_string(sum));
}

std::vector<double> ScenarioSet::mean_returns() const {
    std::vector<double> mu(n, 0.0);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t i = 0; i < n; ++i) mu[i] += at(t, i);
    for (double& m : mu) m /= static_cast<double>(T);
    return mu;
}

ScenarioSet ScenarioSet::from_panel(const data::ReturnsPanel& panel, std::size_t row_begin,
                                    std::size_t row_count) {
    if (row_begin + row_count > panel.n_dates())
        throw std::out_of_range("ScenarioSet::from_panel: row range out of range");
    if (row_count < 2) throw std::invalid_argument("ScenarioSet: need at least 2 scenarios");
    ScenarioSet s;
    s.assets = panel.assets();
    s.T = row_count;
    s.n = panel.n_assets();
    s.r.resize(s.T * s.n);
    for (std::size_t t = 0; t < row_count; ++t)
        for (std::size_t i = 0; i < s.n; ++i) s.r[t * s.n + i] = panel.ret(row_begin + t, i);
    return s;
}

MomentEstimates estimate_moments(const data::ReturnsPanel& panel, std::size_t row_begin,
                                 std::size_t row_count) {
    if (row_begin + row_count > panel.n_dates())
        throw std::out_of_range("estimate_moments: row range out of range");
    if (row_count < 2) throw std::invalid_argument("estimate_moments: need at least 2 rows");
    const std::size_t n = panel.n_assets();
    MomentEstimates mom;
    mom.assets = panel.assets();
    mom.n = n;
    mom.sample_size = row_count;
    mom.mu.assign(n, 0.0);
    for (std::size_t t = 0; t < row_count; ++t)
        for (std::size_t i = 0; i < n; ++i) mom.mu[i] += panel.ret(row_begin + t, i);
    for (double& m : mom.mu) m /= static_cast<double>(row_count);

    mom.sigma.assign(n * n, 0.0);
    for (std::size_t t = 0; t < row_count; ++t)
        for (std::size_t i = 0; i < n; ++i) {
            const double di = panel.ret(row_begin + t, i) - mom.mu[i];
            for (std::size_t j = i; j < n; ++j)
                mom.sigma[i * n + j] += di * (panel.ret(row_begin + t, j) - mom.mu[j]);
        }
    const double inv = 1.0 / static_cast<double>(row_count - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            mom.sigma[i * n + j] *= inv;
            mom.sigma[j * n + i] = mom.sigma[i * n + j];
        }
    return mom;
}

MomentEstimates MomentEstimates::regularized() const {
    MomentEstimates out = *this;
    bool needs_ridge = sample_size == 0 || n >= sample_size;
    if (!needs_ridge) {
        Eigen::LLT<Eigen::MatrixXd> llt(map_matrix(sigma, n));
        needs_ridge = llt.info() != Eigen::Success;
    }
    if (needs_ridge) {
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += sigma_at(i, i);
        const double ridge = std::max(1e-8 * trace / static_cast<double>(n), 1e-12);
        for (std::size_t i = 0; i < n; ++i) out.sigma[i * n + i] += ridge;
    }
    return out;
}

Weights solve_tda_po(const risk::RiskVector& rv) {
    const std::size_t n = rv.size();
    if (n == 0) throw std::invalid_argument("solve_tda_po: empty risk vector");
    Weights out;
    out.assets = rv.assets;
    out.w.resize(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(rv.lambda[i] > 0.0))
            throw std::invalid_argument("solve_tda_po: lambda must be positive (floor upstream)");
        out.w[i] = 1.0 / rv.lambda[i];
        sum += out.w[i];
    }
    for (double& x : out.w) x /= sum;
    out.check_invariants();
    return out;
}

Weights solve_tda_ipo(const risk::RiskVector& rv, std::size_t k) {
    const std::size_t n = rv.size();
    if (n == 0) throw std::invalid_argument("solve_tda_ipo: empty risk vector");
    if (k < 1 || k > n)
        throw std::invalid_argument("solve_tda_ipo: k must be in [1, n], got " +
                                    std::to_string(k));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rv.lambda[a] < rv.lambda[b];
    });

    Weights out;
    out.assets = rv.assets;
    out.w.assign(n, 0.0);
    double sum = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t i = order[r];
        if (!(rv.lambda[i] > 0.0))
            throw std::invalid_argument("solve_tda_ipo: lambda must be positive (floor upstream)");
        out.w[i] = 1.0 / rv.lambda[i];
        sum += out.w[i];
    }
    for (double& x : out.w) x /= sum;
    out.check_invariants();
    return out;
}

Weights solve_gmv(const MomentEstimates& mom) {
    if (mom.n == 0) throw std::invalid_argument("solve_gmv: empty moments");
    const MomentEstimates reg = mom.regularized();
    QpResult qp = qp_solve(reg.sigma, std::vector<double>(mom.n, 0.0));
    Weights out{mom.assets, std::move(qp.w)};
    return out.normalized();
}

Weights solve_mv(const MomentEstimates& mom) {
    if (mom.n == 0) throw std::invalid_argument("solve_mv: empty moments");
    const MomentEstimates reg = mom.regularized();
    std::vector<double> c(mom.n);
    for (std::size_t i = 0; i < mom.n; ++i) c[i] = -mom.mu[i];
    QpResult qp = qp_solve(reg.sigma, c);
    Weights out{mom.assets, std::move(qp.w)};
    return out.normalized();
}

Weights solve_mcvar(const ScenarioSet& scen, std::span<const double> mu, double alpha) {
    if (scen.T < 2) throw std::invalid_argument("solve_mcvar: need at least 2 scenarios");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("solve_mcvar: alpha must be in (0, 1)");
    if (mu.size() != scen.n) throw std::invalid_argument("solve_mcvar: mu size mismatch");

    // variables: w_0..n-1, zeta+, zeta-, z_0..T-1
    const std::size_t n = scen.n, T = scen.T;
    LinearProgram lp;
    lp.num_vars = n + 2 + T;
    lp.maximize = true;
    lp.objective.assign(lp.num_vars, 0.0);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = mu[i];
    lp.objective[n] = -1.0;
    lp.objective[n + 1] = 1.0;
    const double tail = 1.0 / ((1.0 - alpha) * static_cast<double>(T));
    for (std::size_t t = 0; t < T; ++t) lp.objective[n + 2 + t] = -tail;

    std::vector<double> row(lp.num_vars, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i] = 1.0;
    lp.add_constraint(row, Relation::Equal, 1.0);

    for (std::size_t t = 0; t < T; ++t) {
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = scen.at(t, i);
        row[n] = 1.0;
        row[n + 1] = -1.0;
        row[n + 2 + t] = 1.0;
        lp.add_constraint(row, Relation::GreaterEq, 0.0);
    }

    LpSolution sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("solve_mcvar: internal solver fault (LP not optimal)");
    Weights out{scen.assets, std::vector<double>(sol.x.begin(), sol.x.begin() +
                                                 static_cast<std::ptrdiff_t>(n))};
    return out.normalized();
}

Weights solve_sharpe_random(const MomentEstimates& mom, std::size_t samples,
                            std::uint64_t seed) {
    if (mom.n == 0) throw std::invalid_argument("solve_sharpe_random: empty moments");
    if (samples < 1) throw std::invalid_argument("solve_sharpe_random: samples must be >= 1");

    const auto sig = map_matrix(mom.sigma, mom.n);
    Eigen::Map<const Eigen::VectorXd> mu(mom.mu.data(), static_cast<Eigen::Index>(mom.n));

    std::mt19937_64 gen(seed);
    Eigen::VectorXd w(static_cast<Eigen::Index>(mom.n));
    Eigen::VectorXd best_w;
    double best_sharpe = 0.0;
    bool found = false;

    for (std::size_t s = 0; s < samples; ++s) {
        // flat Dirichlet via normalized unit exponentials
        double sum = 0.0;
        for (std::size_t i = 0; i < mom.n; ++i) {
            const double e = -std::log1p(-uniform01(gen));
            w(static_cast<Eigen::Index>(i)) = e;
            sum += e;
        }
        if (sum <= 0.0) w.setConstant(1.0 / static_cast<double>(mom.n));
        else w /= sum;

        const double ret = mu.dot(w);
        if (ret <= 0.0) continue;
        const double var = w.dot(sig * w);
        const double sharpe = ret / std::sqrt(std::max(var, 1e-300));
        if (!found || sharpe > best_sharpe) {
            found = true;
            best_sharpe = sharpe;
            best_w = w;
        }
    }
    if (!found) throw std::runtime_error("solve_sharpe_random: no positive-Sharpe sample");

    Weights out;
    out.assets = mom.assets;
    out.w.assign(best_w.data(), best_w.data() + mom.n);
    return out.normalized();
}

Weights solve_starr(const ScenarioSet& scen, std::span<const double> mu, double alpha) {
    if (scen.T < 2) throw std::invalid_argument("solve_starr: need at least 2 scenarios");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("solve_starr: alpha must be in (0, 1)");
    if (mu.size() != scen.n) throw std::invalid_argument("solve_starr: mu size mismatch");
    const double max_mu = *std::max_element(mu.begin(), mu.end());
    if (!(max_mu > 0.0))
        throw std::runtime_error("solve_starr: no portfolio with positive mean return");

    // Charnes-Cooper variables: x_0..n-1 (= t*w), t, zeta+, zeta-, z_0..T-1
    const std::size_t n = scen.n, T = scen.T;
    const std::size_t xt = n, zp = n + 1, zm = n + 2, z0 = n + 3;
    LinearProgram lp;
    lp.num_vars = n + 3 + T;
    lp.maximize = true;
    lp.objective.assign(lp.num_vars, 0.0);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = mu[i];

    const double tail = 1.0 / ((1.0 - alpha) * static_cast<double>(T));
    std::vector<double> row(lp.num_vars, 0.0);

    // budget: sum x = t
    for (std::size_t i = 0; i < n; ++i) row[i] = 1.0;
    row[xt] = -1.0;
    lp.add_constraint(row, Relation::Equal, 0.0);

    // scaled denominator pinned to 1: zeta + tail*sum z = 1
    std::fill(row.begin(), row.end(), 0.0);
    row[zp] = 1.0;
    row[zm] = -1.0;
    for (std::size_t t = 0; t < T; ++t) row[z0 + t] = tail;
    lp.add_constraint(row, Relation::Equal, 1.0);

    // z_t >= -y_t - zeta, scaled
    for (std::size_t t = 0; t < T; ++t) {
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = scen.at(t, i);
        row[zp] = 1.0;
        row[zm] = -1.0;
        row[z0 + t] = 1.0;
        lp.add_constraint(row, Relation::GreaterEq, 0.0);
    }

    LpSolution sol = lp_solve(lp);
    if (sol.status == LpStatus::Unbounded)
        throw std::runtime_error("solve_starr: no feasible positive-denominator portfolio");
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("solve_starr: internal solver fault (LP not optimal)");
    const double t_scale = sol.x[xt];
    if (!(t_scale > 1e-12))
        throw std::runtime_error("solve_starr: no feasible positive-denominator portfolio");

    Weights out;
    out.assets = scen.assets;
    out.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.w[i] = sol.x[i] / t_scale;
    out = out.normalized();

    // post hoc denominator check at the returned portfolio
    std::vector<double> losses(T);
    for (std::size_t t = 0; t < T; ++t) {
        double y = 0.0;
        for (std::size_t i = 0; i < n; ++i) y += scen.at(t, i) * out.w[i];
        losses[t] = -y;
    }
    if (!(scenario_cvar(losses, alpha) > 0.0))
        throw std::runtime_error("solve_starr: CVaR denominator not positive at optimum");
    return out;
}

Weights solve_omega(const ScenarioSet& scen, double threshold) {
    if (scen.T < 2) throw std::invalid_argument("solve_omega: need at least 2 scenarios");
    const std::vector<double> mu = scen.mean_returns();
    const double max_mu = *std::max_element(mu.begin(), mu.end());
    if (!(threshold < max_mu))
        throw std::runtime_error("solve_omega: threshold L=" + std::to_string(threshold) +
                                 " is not below the best attainable mean " +
                                 std::to_string(max_mu));

    // Omega = 1 + E(R-L)/E(L-R)^+; maximize the fractional part via
    // Charnes-Cooper. Variables: x_0..n-1 (= t*w), t, d_0..T-1 (= t*(L-y_t)^+).
    const std::size_t n = scen.n, T = scen.T;
    const std::size_t xt = n, d0 = n + 1;
    LinearProgram lp;
    lp.num_vars = n + 1 + T;
    lp.maximize = true;
    lp.objective.assign(lp.num_vars, 0.0);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = mu[i];
    lp.objective[xt] = -threshold;

    std::vector<double> row(lp.num_vars, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i] = 1.0;
    row[xt] = -1.0;
    lp.add_constraint(row, Relation::Equal, 0.0);

    // scaled downside pinned to 1: (1/T) sum d = 1
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t t = 0; t < T; ++t) row[d0 + t] = 1.0 / static_cast<double>(T);
    lp.add_constraint(row, Relation::Equal, 1.0);

    // d_t >= L*t - y_t scaled: sum_i r_ti x_i + d_t - L*t >= 0
    for (std::size_t t = 0; t < T; ++t) {
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = scen.at(t, i);
        row[xt] = -threshold;
        row[d0 + t] = 1.0;
        lp.add_constraint(row, Relation::GreaterEq, 0.0);
    }

    LpSolution sol = lp_solve(lp);
    if (sol.status == LpStatus::Unbounded)
        throw std::runtime_error(
            "solve_omega: unbounded ratio (zero downside below the threshold)");
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("solve_omega: internal solver fault (LP not optimal)");
    const double t_scale = sol.x[xt];
    if (!(t_scale > 1e-12))
        throw std::runtime_error("solve_omega: degenerate solution (scale collapsed)");

    Weights out;
    out.assets = scen.assets;
    out.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.w[i] = sol.x[i] / t_scale;
    return out.normalized();
}

Weights naive_weights(std::vector<std::string> assets) {
    if (assets.empty()) throw std::invalid_argument("naive_weights: need at least one asset");
    Weights out;
    out.w.assign(assets.size(), 1.0 / static_cast<double>(assets.size()));
    out.assets = std::move(assets);
    return out;
}

} // namespace topofolio::opt
