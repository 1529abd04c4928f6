#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "topofolio/market_data.hpp"
#include "topofolio/topo_risk.hpp"

namespace topofolio::opt {

/// Portfolio allocation on the budget/no-short simplex.
struct Weights {
    std::vector<std::string> assets;
    std::vector<double> w;

    std::size_t size() const { return w.size(); }
    /// Emit-time cleanup: clip negatives at zero and renormalize to sum 1.
    Weights normalized() const;
    std::size_t nonzero_count() const;
    void check_invariants() const; // sum within 1e-9 of 1, entries >= -1e-12
};

/// Discrete return scenarios (T x n), each with probability 1/T.
struct ScenarioSet {
    std::vector<std::string> assets;
    std::size_t T = 0;
    std::size_t n = 0;
    std::vector<double> r; // row-major, scenario-major

    double at(std::size_t t, std::size_t i) const { return r[t * n + i]; }
    std::vector<double> mean_returns() const;
    static ScenarioSet from_panel(const data::ReturnsPanel& panel, std::size_t row_begin,
                                  std::size_t row_count);
};

/// Sample mean vector and covariance matrix of a returns slice.
struct MomentEstimates {
    std::vector<std::string> assets;
    std::size_t n = 0;
    std::size_t sample_size = 0;
    std::vector<double> mu;
    std::vector<double> sigma; // row-major n x n, symmetric

    double sigma_at(std::size_t i, std::size_t j) const { return sigma[i * n + j]; }
    /// Ridge sigma + 1e-8 * trace(sigma)/n * I when the matrix is singular,
    /// indefinite, or the asset count reaches the sample size.
    MomentEstimates regularized() const;
};

MomentEstimates estimate_moments(const data::ReturnsPanel& panel, std::size_t row_begin,
                                 std::size_t row_count);

/// Minimum topological risk: min sum_i lambda_i w_i^2 on the simplex.
/// Closed form from the KKT system, w_i proportional to 1/lambda_i.
Weights solve_tda_po(const risk::RiskVector& rv);

/// Cardinality-constrained variant: exactly k positive weights. For a fixed
/// support the optimum value is 1/sum(1/lambda), so the k smallest lambdas
/// (ties by input order) form the optimal support.
Weights solve_tda_ipo(const risk::RiskVector& rv, std::size_t k);

/// Global minimum variance: min w' sigma w on the simplex.
Weights solve_gmv(const MomentEstimates& mom);

/// Mean-variance with unit risk aversion: min w' sigma w - mu'w.
Weights solve_mv(const MomentEstimates& mom);

/// Mean-CVaR scenario LP: max mu'w - [zeta + 1/((1-alpha)T) sum z_t] with
/// z_t >= -y_t - zeta, z_t >= 0.
Weights solve_mcvar(const ScenarioSet& scen, std::span<const double> mu, double alpha = 0.95);

/// Random-search Sharpe maximizer: `samples` flat-Dirichlet portfolios from a
/// seeded generator, returns the first argmax of mu'w / sqrt(w' sigma w).
/// Throws if no sample has positive expected return.
Weights solve_sharpe_random(const MomentEstimates& mom, std::size_t samples = 5000,
                            std::uint64_t seed = 0);

/// STARR ratio maximizer: max mu'w / CVaR_alpha(w) by the Charnes-Cooper
/// transform of the scenario LP.
Weights solve_starr(const ScenarioSet& scen, std::span<const double> mu, double alpha = 0.95);

/// Omega ratio maximizer at threshold L, via max E(R-L)/E(L-R)^+ (equivalent
/// since Omega = 1 + that ratio). Requires L below the best vertex mean.
Weights solve_omega(const ScenarioSet& scen, double threshold);

/// Equal weights 1/n.
Weights naive_weights(std::vector<std::string> assets);

} // namespace topofolio::opt
