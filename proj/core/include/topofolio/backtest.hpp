#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "topofolio/market_data.hpp"
#include "topofolio/optimizers.hpp"

namespace topofolio::bt {

/// Fits a strategy on the in-sample rows [in_begin, in_begin + in_len) of a
/// returns panel and emits simplex weights over the panel's assets.
using StrategyFn = std::function<opt::Weights(const data::ReturnsPanel& panel,
                                              std::size_t in_begin, std::size_t in_len)>;

struct BacktestResult {
    std::string strategy;
    std::vector<data::WindowSlice> windows;
    std::vector<opt::Weights> window_weights;
    std::vector<double> oos_returns;          // concatenated, pre-cost
    std::vector<std::size_t> rebalance_days;  // indices into oos_returns, windows 1..M-1
    std::vector<double> turnover;             // one entry per rebalance
    double tc_rate = 0.0;
    std::vector<double> adjusted_returns;     // oos_returns net of costs at tc_rate
    std::vector<double> wealth;               // growth of 1 from adjusted_returns, length T+1
    double avg_nonzero_assets = 0.0;
};

/// Sum of absolute weight changes between two allocations over the same
/// asset universe.
double turnover(const opt::Weights& prev, const opt::Weights& next);

/// Subtract rate * turnover from the return at each rebalance day; other
/// days pass through.
std::vector<double> apply_transaction_costs(std::span<const double> returns,
                                            std::span<const std::size_t> rebalance_days,
                                            std::span<const double> turnovers, double rate);

/// Compounded growth of a 1.0 investment: W_0 = 1, W_t = W_{t-1} (1 + r_t).
std::vector<double> wealth_curve(std::span<const double> returns);

/// Rolling-window experiment: per window fit the strategy in-sample, hold the
/// weights fixed over the out-of-sample slice (daily portfolio return
/// sum_i w_i r_it), concatenate windows in order, track turnover and apply
/// transaction costs at tc_rate (the first window trades free). A strategy
/// failure aborts with the window index in the error.
BacktestResult run_backtest(const data::ReturnsPanel& panel, const std::string& name,
                            const StrategyFn& strategy, const data::WindowSpec& spec,
                            double tc_rate = 0.003);

} // namespace topofolio::bt
