// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// nonzero exit when anything fails. Tolerances and time budgets are fixed
// here, not configurable.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../test_support.hpp"
#include "topofolio/backtest.hpp"
#include "topofolio/lp_solver.hpp"
#include "topofolio/market_data.hpp"
#include "topofolio/metrics.hpp"
#include "topofolio/optimizers.hpp"
#include "topofolio/qp_solver.hpp"
#include "topofolio/strategy.hpp"
#include "topofolio/tda_core.hpp"
#include "topofolio/topo_risk.hpp"

namespace fs = std::filesystem;
using namespace topofolio;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

void require_close(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol))
        throw Failure(what + ": got " + std::to_string(got) + ", want " +
                      std::to_string(want) + " (tol " + std::to_string(tol) + ")");
}

void require_rel(double got, double want, double rel, const std::string& what) {
    const double scale = std::max(std::abs(want), 1e-300);
    if (!(std::abs(got - want) / scale <= rel))
        throw Failure(what + ": got " + std::to_string(got) + ", want " +
                      std::to_string(want) + " (rel tol " + std::to_string(rel) + ")");
}

// ---------------------------------------------------------------------------

// 1. H0 persistence against an independent single-linkage sweep and Prim MST
void criterion_h0_oracle() {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<std::size_t> m_dist(2, 50), d_dist(1, 5);
    for (int rep = 0; rep < 200; ++rep) {
        const auto cloud = testsupport::random_cloud(gen, m_dist(gen), d_dist(gen));
        const auto dist = tda::pairwise_distances(cloud);
        const auto diag = tda::rips_persistence_h0(dist);

        const auto heights = testsupport::single_linkage_heights(dist);
        require(diag.pairs.size() == heights.size(), "death count != merge count");
        for (std::size_t i = 0; i < heights.size(); ++i) {
            require(diag.pairs[i].birth == 0.0, "H0 births must be 0");
            require(diag.pairs[i].death == heights[i], "death != merge height (exact)");
        }

        auto prim = testsupport::prim_mst_weights(dist);
        std::sort(prim.begin(), prim.end());
        double sum_deaths = 0.0, sum_mst = 0.0;
        for (std::size_t i = 0; i < prim.size(); ++i) {
            sum_deaths += diag.pairs[i].death;
            sum_mst += prim[i];
        }
        require(sum_deaths == sum_mst, "sum of deaths != MST weight (exact)");
    }
}

// 2. Landscape nesting: eta_k equals the tent of the k-th largest death
void criterion_landscape_nesting() {
    std::mt19937_64 gen(2025);
    for (int rep = 0; rep < 100; ++rep) {
        const auto diag = testsupport::random_h0_diagram(gen, 25);
        std::vector<double> deaths;
        for (const auto& p : diag.pairs) deaths.push_back(p.death);
        std::sort(deaths.begin(), deaths.end(), std::greater<double>());

        const double upper = 1.05 * diag.max_death();
        const std::size_t len = 512;
        const auto land = tda::build_landscape(diag, 0.0, upper / (len - 1), len,
                                               diag.pairs.size());
        for (std::size_t k = 0; k < land.k_max; ++k)
            for (std::size_t g = 0; g < land.grid_len; ++g)
                require(land.at(k, g) ==
                            tda::tent({0.0, deaths[k]}, land.grid_point(g)),
                        "eta_k != tent of k-th largest death (exact)");
    }
}

// 3. p=1 linearity: norm of the mean landscape vs mean of norms
void criterion_norm_linearity() {
    std::mt19937_64 gen(2026);
    std::uniform_int_distribution<std::size_t> batch(2, 10);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t M = batch(gen);
        std::vector<tda::PersistenceDiagram> diagrams;
        double maxd = 0.0;
        std::size_t max_pairs = 1;
        for (std::size_t j = 0; j < M; ++j) {
            diagrams.push_back(testsupport::random_h0_diagram(gen, 20));
            maxd = std::max(maxd, diagrams.back().max_death());
            max_pairs = std::max(max_pairs, diagrams.back().pairs.size());
        }
        std::vector<tda::Landscape> lands;
        double mean_norm = 0.0;
        for (const auto& d : diagrams) {
            lands.push_back(tda::build_landscape(d, 0.0, 1.05 * maxd / 511, 512, max_pairs));
            mean_norm += tda::landscape_norm(lands.back(), 1.0);
        }
        mean_norm /= static_cast<double>(M);
        const double norm_mean = tda::landscape_norm(tda::mean_landscape(lands), 1.0);
        require_close(norm_mean, mean_norm, 1e-12 * std::max(1.0, std::abs(mean_norm)),
                      "norm(mean) != mean(norm) at p=1");
    }
}

// 4. Lambda equals T x population variance of the norm series; constants give 0
void criterion_algorithm_identity() {
    risk::TopoRiskConfig cfg; // paper defaults: 126/21, tau 1, dim 3, p 1, k 1
    std::mt19937_64 gen(2027);
    for (int rep = 0; rep < 50; ++rep) {
        const auto series = testsupport::random_series(gen, 252, 1.0);
        const auto detail = risk::asset_risk_detail(series, cfg);
        const double count = static_cast<double>(detail.norms.size());
        require(detail.norms.size() == 7, "252/126/21 must give 7 sub-windows");

        const double mean =
            std::accumulate(detail.norms.begin(), detail.norms.end(), 0.0) / count;
        double variance = 0.0;
        for (double x : detail.norms) variance += (x - mean) * (x - mean);
        variance /= count;
        require_close(detail.lambda, count * variance,
                      1e-10 * std::max(1.0, std::abs(detail.lambda)),
                      "lambda != T x population variance");
    }
    const std::vector<double> constant(252, 0.0125);
    require(risk::asset_topological_risk(constant, cfg) == 0.0,
            "constant series must give lambda exactly 0");
}

// 5. Scaling a series by c scales lambda by c^4
void criterion_scaling_law() {
    risk::TopoRiskConfig cfg;
    std::mt19937_64 gen(2028);
    for (int rep = 0; rep < 10; ++rep) {
        const auto series = testsupport::random_series(gen, 252, 0.02);
        const double base = risk::asset_topological_risk(series, cfg);
        require(base > 0.0, "scaling base must be positive");
        for (const double c : {0.5, 2.0, 10.0}) {
            std::vector<double> scaled(series.size());
            for (std::size_t i = 0; i < series.size(); ++i) scaled[i] = c * series[i];
            require_rel(risk::asset_topological_risk(scaled, cfg), base * c * c * c * c,
                        1e-6, "lambda(c*series) != c^4 lambda");
        }
    }
}

// 6. TDA-PO closed form vs the internal QP and a fine grid search
void criterion_tda_po() {
    {
        const auto w = opt::solve_tda_po({{"a", "b"}, {1.0, 3.0}});
        require(w.w[0] == 0.75 && w.w[1] == 0.25, "lambda (1,3) must give exactly (3/4, 1/4)");
    }
    std::mt19937_64 gen(2029);
    std::uniform_real_distribution<double> lam(0.05, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 7;
        risk::RiskVector rv;
        std::vector<double> Q(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            rv.assets.push_back("A" + std::to_string(i));
            rv.lambda.push_back(lam(gen));
            Q[i * n + i] = rv.lambda[i];
        }
        const auto closed = opt::solve_tda_po(rv);
        const auto qp = opt::qp_solve(Q, std::vector<double>(n, 0.0));
        require(qp.kkt_residual <= 1e-8, "QP KKT residual above 1e-8");
        for (std::size_t i = 0; i < n; ++i)
            require_close(closed.w[i], qp.w[i], 1e-8, "closed form != QP weight");

        if (n == 2) {
            auto objective = [&](double w1, double w2) {
                return rv.lambda[0] * w1 * w1 + rv.lambda[1] * w2 * w2;
            };
            const double got = objective(closed.w[0], closed.w[1]);
            const double grid = testsupport::grid_best_2simplex(objective, 1e-4);
            require(got <= grid + 1e-7, "closed form loses to the grid search");
        }
    }
}

// 7. TDA-IPO greedy support equals exhaustive enumeration
void criterion_tda_ipo() {
    std::mt19937_64 gen(2030);
    std::uniform_real_distribution<double> lam(0.05, 5.0);
    std::uniform_int_distribution<std::size_t> n_dist(2, 10);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = n_dist(gen);
        std::vector<double> lambda(n);
        for (double& l : lambda) l = lam(gen);
        risk::RiskVector rv;
        for (std::size_t i = 0; i < n; ++i) rv.assets.push_back("A" + std::to_string(i));
        rv.lambda = lambda;

        const std::size_t k_top = std::min<std::size_t>(n, 5);
        for (std::size_t k = 1; k <= k_top; ++k) {
            const auto w = opt::solve_tda_ipo(rv, k);
            require(w.nonzero_count() == k, "support size != k");
            double got = 0.0;
            for (std::size_t i = 0; i < n; ++i) got += lambda[i] * w.w[i] * w.w[i];

            double best = std::numeric_limits<double>::infinity();
            std::vector<bool> mask(n, false);
            std::fill(mask.end() - static_cast<std::ptrdiff_t>(k), mask.end(), true);
            do {
                double inv = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask[i]) inv += 1.0 / lambda[i];
                best = std::min(best, 1.0 / inv);
            } while (std::next_permutation(mask.begin(), mask.end()));
            require_close(got, best, 1e-12 * std::max(1.0, best),
                          "greedy support loses to enumeration");
        }
    }
}

// 8. Benchmark solvers against analytic, grid and vertex-enumeration oracles
void criterion_benchmark_solvers() {
    std::mt19937_64 gen(2031);

    // GMV / MV against the 2-asset analytic solution
    std::uniform_real_distribution<double> vol(0.5, 2.0), rho(-0.8, 0.8), mean(-0.1, 0.1);
    for (int rep = 0; rep < 50; ++rep) {
        const double s1 = vol(gen), s2 = vol(gen), r = rho(gen);
        const double v1 = s1 * s1, v2 = s2 * s2, cov = r * s1 * s2;
        opt::MomentEstimates mom{{"A", "B"}, 2, 1000, {mean(gen), mean(gen)},
                                 {v1, cov, cov, v2}};

        // GMV: minimize a w1^2 + b w1 + const over [0,1]
        {
            const double a = v1 + v2 - 2 * cov, b = 2 * (cov - v2);
            const double w1 = std::clamp(-b / (2 * a), 0.0, 1.0);
            const auto got = opt::solve_gmv(mom);
            require_close(got.w[0], w1, 1e-8, "GMV != 2-asset analytic");
        }
        // MV adds the linear mean term
        {
            const double a = v1 + v2 - 2 * cov;
            const double b = 2 * (cov - v2) - mom.mu[0] + mom.mu[1];
            const double w1 = std::clamp(-b / (2 * a), 0.0, 1.0);
            const auto got = opt::solve_mv(mom);
            require_close(got.w[0], w1, 1e-8, "MV != 2-asset analytic");
        }
    }

    // GMV / MV against a 3-asset grid search
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> A(9), S(9, 0.0), mu(3);
        for (double& a : A) a = coef(gen);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k) S[i * 3 + j] += A[k * 3 + i] * A[k * 3 + j];
            S[i * 3 + i] += 0.05;
        }
        for (double& m : mu) m = 0.1 * coef(gen);
        opt::MomentEstimates mom{{"A", "B", "C"}, 3, 1000, mu, S};

        auto quad = [&](double w1, double w2, double w3) {
            const double w[3] = {w1, w2, w3};
            double q = 0.0;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) q += w[i] * S[i * 3 + j] * w[j];
            return q;
        };
        const auto gmv = opt::solve_gmv(mom);
        require(quad(gmv.w[0], gmv.w[1], gmv.w[2]) <=
                    testsupport::grid_best_3simplex(quad, 1e-3) + 2e-3,
                "GMV loses to the 3-asset grid");

        auto mv_obj = [&](double w1, double w2, double w3) {
            return quad(w1, w2, w3) - (mu[0] * w1 + mu[1] * w2 + mu[2] * w3);
        };
        const auto mv = opt::solve_mv(mom);
        require(mv_obj(mv.w[0], mv.w[1], mv.w[2]) <=
                    testsupport::grid_best_3simplex(mv_obj, 1e-3) + 2e-3,
                "MV loses to the 3-asset grid");
    }

    // scenario LPs beat every 2-simplex grid point in their own objectives
    std::uniform_real_distribution<double> ret(-0.06, 0.07);
    auto make_scen = [&](std::size_t T) {
        opt::ScenarioSet s;
        s.assets = {"A", "B"};
        s.T = T;
        s.n = 2;
        s.r.resize(T * 2);
        for (double& v : s.r) v = ret(gen);
        s.r[0] = -0.08; // one common loss scenario keeps the tails meaningful
        s.r[1] = -0.09;
        return s;
    };
    auto ru_cvar = [](const opt::ScenarioSet& s, double w1, double w2, double alpha) {
        std::vector<double> losses(s.T);
        for (std::size_t t = 0; t < s.T; ++t)
            losses[t] = -(s.at(t, 0) * w1 + s.at(t, 1) * w2);
        double best = std::numeric_limits<double>::infinity();
        for (double zeta : losses) {
            double tail = 0.0;
            for (double l : losses) tail += std::max(l - zeta, 0.0);
            best = std::min(best, zeta + tail / ((1.0 - alpha) * static_cast<double>(s.T)));
        }
        return best;
    };

    int lp_models_checked = 0;
    for (int rep = 0; rep < 12 && lp_models_checked < 5; ++rep) {
        const auto s = make_scen(16);
        const auto mu = s.mean_returns();
        const double alpha = 0.9;

        // mean-CVaR
        {
            const auto w = opt::solve_mcvar(s, mu, alpha);
            auto objective = [&](double w1, double w2) {
                return mu[0] * w1 + mu[1] * w2 - ru_cvar(s, w1, w2, alpha);
            };
            require(objective(w.w[0], w.w[1]) >=
                        testsupport::grid_best_2simplex(objective, 1e-3, false) - 1e-6,
                    "mean-CVaR loses to a grid point");
        }
        if (*std::max_element(mu.begin(), mu.end()) <= 0.0) continue;
        // STARR
        {
            opt::Weights w;
            try {
                w = opt::solve_starr(s, mu, alpha);
            } catch (const std::exception&) {
                continue; // no positive-denominator portfolio in this draw
            }
            auto ratio = [&](double w1, double w2) {
                const double cvar = ru_cvar(s, w1, w2, alpha);
                if (cvar <= 0.0) return -std::numeric_limits<double>::infinity();
                return (mu[0] * w1 + mu[1] * w2) / cvar;
            };
            require(ratio(w.w[0], w.w[1]) >=
                        testsupport::grid_best_2simplex(ratio, 1e-3, false) - 1e-6,
                    "STARR loses to a grid point");
        }
        // Omega at L = 0
        {
            const auto w = opt::solve_omega(s, 0.0);
            auto omega = [&](double w1, double w2) {
                double up = 0.0, down = 0.0;
                for (std::size_t t = 0; t < s.T; ++t) {
                    const double y = s.at(t, 0) * w1 + s.at(t, 1) * w2;
                    up += std::max(y, 0.0);
                    down += std::max(-y, 0.0);
                }
                if (down <= 0.0) return -std::numeric_limits<double>::infinity();
                return up / down;
            };
            require(omega(w.w[0], w.w[1]) >=
                        testsupport::grid_best_2simplex(omega, 1e-3, false) - 1e-6,
                    "Omega loses to a grid point");
        }
        ++lp_models_checked;
    }
    require(lp_models_checked >= 3, "scenario-LP oracle needs more usable draws");

    // LP solver against vertex enumeration
    std::uniform_int_distribution<std::size_t> nv(2, 4), nc(1, 4);
    std::uniform_real_distribution<double> lp_coef(-2.0, 2.0), lp_rhs(-1.0, 2.5);
    std::uniform_int_distribution<int> rel3(0, 2);
    int solved = 0;
    for (int rep = 0; rep < 100; ++rep) {
        opt::LinearProgram lp;
        lp.num_vars = nv(gen);
        lp.maximize = rep % 2 == 0;
        lp.objective.resize(lp.num_vars);
        for (double& c : lp.objective) c = lp_coef(gen);
        const std::size_t rows = nc(gen);
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<double> row(lp.num_vars);
            for (double& a : row) a = lp_coef(gen);
            const int kind = rel3(gen);
            lp.add_constraint(row,
                              kind == 0 ? opt::Relation::LessEq
                                        : (kind == 1 ? opt::Relation::GreaterEq
                                                     : opt::Relation::Equal),
                              lp_rhs(gen));
        }
        for (std::size_t j = 0; j < lp.num_vars; ++j) {
            std::vector<double> row(lp.num_vars, 0.0);
            row[j] = 1.0;
            lp.add_constraint(row, opt::Relation::LessEq, 3.0);
        }
        const auto sol = opt::lp_solve(lp);
        const auto oracle = testsupport::lp_vertex_enumeration(lp);
        if (oracle.feasible) {
            require(sol.status == opt::LpStatus::Optimal, "LP missed a feasible optimum");
            require_close(sol.objective, oracle.objective, 1e-6,
                          "LP objective != vertex enumeration");
            ++solved;
        } else {
            require(sol.status == opt::LpStatus::Infeasible, "LP missed infeasibility");
        }
    }
    require(solved >= 30, "LP oracle needs more feasible draws");
}

// 9. Metric formulas, invariances and degenerate statistical tests
void criterion_metrics() {
    {
        const std::vector<double> returns{-1.0, -2.0, -3.0, -4.0};
        const auto vc = metrics::var_cvar(returns, 0.5);
        require(vc.var == 3.0 && vc.cvar == 3.5, "var_cvar({1,2,3,4}, 0.5) != (3, 3.5)");
    }
    std::mt19937_64 gen(2032);
    const double alpha = 0.95;
    for (int rep = 0; rep < 100; ++rep) {
        const auto r = testsupport::random_series(gen, 120);
        const double c = 2.5;
        std::vector<double> scaled(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) scaled[i] = c * r[i];

        require_rel(metrics::emr(scaled), c * metrics::emr(r), 1e-10, "EMR scaling");
        require_rel(metrics::stdev(scaled), c * metrics::stdev(r), 1e-10, "stdev scaling");
        require_rel(metrics::downside_dev(scaled), c * metrics::downside_dev(r), 1e-10,
                    "DD scaling");
        const auto vc = metrics::var_cvar(r, alpha);
        const auto vcs = metrics::var_cvar(scaled, alpha);
        require_rel(vcs.var, c * vc.var, 1e-10, "VaR scaling");
        require_rel(vcs.cvar, c * vc.cvar, 1e-10, "CVaR scaling");

        const auto a = metrics::ratios(r, alpha);
        const auto b = metrics::ratios(scaled, alpha);
        require(a.sharpe && b.sharpe, "Sharpe must be defined on random series");
        require_rel(*b.sharpe, *a.sharpe, 1e-10, "Sharpe scale invariance");
        require_rel(*b.sortino, *a.sortino, 1e-10, "Sortino scale invariance");
        if (a.svr) require_rel(*b.svr, *a.svr, 1e-10, "SVR scale invariance");
        if (a.scr) require_rel(*b.scr, *a.scr, 1e-10, "SCR scale invariance");
        if (a.rachev) require_rel(*b.rachev, *a.rachev, 1e-10, "Rachev scale invariance");

        if (rep == 0) {
            const auto zs = metrics::z_test_sharpe(r, r);
            require(zs.statistic == 0.0 && zs.p_value == 0.5, "z_sharpe(r, r) != 0");
            const auto f = metrics::f_test_variance(r, r);
            require(f.statistic == 1.0, "f_test(r, r) != 1");
        }
    }
}

// 10. Rolling-window protocol: 2520 days at 252/21/21 -> 108 windows
void criterion_protocol() {
    std::mt19937_64 gen(2033);
    const std::size_t rows = 2520, assets = 8;
    std::vector<std::string> dates(rows), names;
    std::vector<double> rets(rows * assets);
    for (std::size_t t = 0; t < rows; ++t) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04zu-%02zu-%02zu", 2000 + t / 336,
                      (t / 28) % 12 + 1, t % 28 + 1);
        dates[t] = buf;
    }
    for (std::size_t j = 0; j < assets; ++j) names.push_back("A" + std::to_string(j));
    std::normal_distribution<double> dist(0.0004, 0.012);
    for (double& r : rets) r = dist(gen);
    const data::ReturnsPanel panel(dates, names, rets);
    const data::WindowSpec spec{252, 21, 21};

    require(data::window_count(rows, spec) == 108,
            "floor((2520-273)/21)+1 must be 108 windows");

    const auto naive = opt::make_strategy({opt::Model::Naive, "naive", 0, 0.95, {}, 0, 0},
                                          risk::TopoRiskConfig{});
    const auto res = bt::run_backtest(panel, "naive", naive, spec, 0.003);
    require(res.windows.size() == 108, "backtest must produce 108 windows");
    require(res.oos_returns.size() == 108 * 21, "oos length != windows x out_len");
    for (double t : res.turnover) require(t == 0.0, "naive turnover must be 0");

    // a strategy with real turnover: positive cost rates only ever lower wealth
    const auto gmv = opt::make_strategy({opt::Model::Gmv, "gmv", 0, 0.95, {}, 0, 0},
                                        risk::TopoRiskConfig{});
    const auto free_run = bt::run_backtest(panel, "gmv", gmv, spec, 0.0);
    for (const double rate : {0.0003, 0.003, 0.01}) {
        const auto wealth = bt::wealth_curve(bt::apply_transaction_costs(
            free_run.oos_returns, free_run.rebalance_days, free_run.turnover, rate));
        require(wealth.size() == free_run.wealth.size(), "wealth length mismatch");
        for (std::size_t t = 0; t < wealth.size(); ++t)
            require(free_run.wealth[t] >= wealth[t] - 1e-15,
                    "zero-cost wealth fell below a positive-rate wealth");
    }
}

// 11. Two identical CLI runs produce byte-identical outputs
void criterion_cli_determinism() {
    const fs::path dir = fs::temp_directory_path() /
                         ("topofolio_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    struct Cleanup {
        fs::path d;
        ~Cleanup() { fs::remove_all(d); }
    } cleanup{dir};

    // 20-asset, 600-day synthetic price panel
    const fs::path panel = dir / "panel.csv";
    {
        std::mt19937_64 gen(606);
        std::normal_distribution<double> move(0.0004, 0.011);
        std::ofstream out(panel);
        out << "date";
        for (int j = 0; j < 20; ++j) out << ",A" << j;
        out << "\n";
        std::vector<double> px(20, 100.0);
        for (int t = 0; t < 601; ++t) {
            char date[32];
            std::snprintf(date, sizeof date, "%04d-%02d-%02d", 2000 + t / 336,
                          (t / 28) % 12 + 1, t % 28 + 1);
            out << date;
            for (int j = 0; j < 20; ++j) {
                px[j] *= 1.0 + move(gen);
                char cell[32];
                std::snprintf(cell, sizeof cell, ",%.8f", px[j]);
                out << cell;
            }
            out << "\n";
        }
    }

    const std::string args =
        std::string(" backtest --data ") + panel.string() +
        " --model tda-po --model tda-ipo --model gmv --model sharpe --model mcvar"
        " --model naive --k 5 --seed 987 --tc-rate 0.003";
    auto run_into = [&](const fs::path& out_dir) {
        const std::string cmd = std::string(TOPOFOLIO_CLI_PATH) + args + " --out-dir " +
                                out_dir.string() + " > /dev/null 2>&1";
        require(WEXITSTATUS(std::system(cmd.c_str())) == 0, "CLI backtest run failed");
    };
    run_into(dir / "run1");
    run_into(dir / "run2");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir / "run1"))
        files.push_back(entry.path().filename());
    std::sort(files.begin(), files.end());
    require(!files.empty(), "first run produced no files");
    for (const auto& name : files) {
        std::ifstream a(dir / "run1" / name, std::ios::binary);
        std::ifstream b(dir / "run2" / name, std::ios::binary);
        require(b.good(), "second run is missing " + name.string());
        std::ostringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        require(sa.str() == sb.str(), "outputs differ: " + name.string());
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "H0 persistence equals single-linkage oracle and MST weight", 10.0,
         criterion_h0_oracle},
        {2, "landscape nesting against sorted deaths (exact)", 5.0,
         criterion_landscape_nesting},
        {3, "p=1 norm linearity of the mean landscape (1e-12)", 5.0,
         criterion_norm_linearity},
        {4, "topological risk equals T x variance of norms (1e-10)", 30.0,
         criterion_algorithm_identity},
        {5, "lambda scales as c^4 under return scaling (1e-6)", 10.0,
         criterion_scaling_law},
        {6, "TDA-PO closed form vs QP and 1e-4 grid", 10.0, criterion_tda_po},
        {7, "TDA-IPO support selection vs exhaustive enumeration", 10.0,
         criterion_tda_ipo},
        {8, "benchmark solvers vs analytic/grid/vertex oracles", 60.0,
         criterion_benchmark_solvers},
        {9, "metric formulas, invariances and degenerate tests", 5.0, criterion_metrics},
        {10, "rolling protocol: 2520 days -> 108 windows, cost monotonicity", 30.0,
         criterion_protocol},
        {11, "CLI determinism: byte-identical repeated runs", 120.0,
         criterion_cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = elapsed < c.budget_seconds;
        const bool pass = error.empty() && in_budget;
        if (!pass) ++failures;
        std::printf("%s %2d: %s (%.2fs / %.0fs)%s%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, elapsed, c.budget_seconds, error.empty() ? "" : " - ",
                    error.c_str());
        if (error.empty() && !in_budget) std::printf("        over time budget\n");
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
