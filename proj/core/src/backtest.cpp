#include "topofolio/backtest.hpp"

#include <cmath>
#include <stdexcept>

namespace topofolio::bt {

double turnover(const opt::Weights& prev, const opt::Weights& next) {
    if (prev.assets != next.assets)
        throw std::invalid_argument("turnover: asset universes differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < prev.w.size(); ++i) sum += std::abs(next.w[i] - prev.w[i]);
    return sum;
}

std::vector<double> apply_transaction_costs(std::span<const double> returns,
                                            std::span<const std::size_t> rebalance_days,
                                            std::span<const double> turnovers, double rate) {
    if (rate < 0.0) throw std::invalid_argument("apply_transaction_costs: rate must be >= 0");
    if (rebalance_days.size() != turnovers.size())
        throw std::invalid_argument("apply_transaction_costs: one turnover per rebalance day");
    std::vector<double> adjusted(returns.begin(), returns.end());
    for (std::size_t k = 0; k < rebalance_days.size(); ++k) {
        const std::size_t day = rebalance_days[k];
        if (day >= adjusted.size())
            throw std::invalid_argument("apply_transaction_costs: rebalance day out of range");
        adjusted[day] -= rate * turnovers[k];
    }
    return adjusted;
}

std::vector<double> wealth_curve(std::span<const double> returns) {
    std::vector<double> wealth;
    wealth.reserve(returns.size() + 1);
    wealth.push_back(1.0);
    for (double r : returns) {
        if (!(r > -1.0))
            throw std::invalid_argument("wealth_curve: return <= -1 wipes the portfolio");
        wealth.push_back(wealth.back() * (1.0 + r));
    }
    return wealth;
}

BacktestResult run_backtest(const data::ReturnsPanel& panel, const std::string& name,
                            const StrategyFn& strategy, const data::WindowSpec& spec,
                            double tc_rate) {
    if (tc_rate < 0.0) throw std::invalid_argument("run_backtest: tc_rate must be >= 0");
    BacktestResult res;
    res.strategy = name;
    res.tc_rate = tc_rate;
    res.windows = data::rolling_windows(panel, spec);

    double nonzero_total = 0.0;
    for (std::size_t m = 0; m < res.windows.size(); ++m) {
        const auto& win = res.windows[m];
        opt::Weights weights;
        try {
            weights = strategy(panel, win.in_begin, win.in_len).normalized();
            weights.check_invariants();
        } catch (const std::exception& e) {
            throw std::runtime_error("strategy '" + name + "' failed on window " +
                                     std::to_string(m) + ": " + e.what());
        }
        if (weights.assets != panel.assets())
            throw std::runtime_error("strategy '" + name + "' returned weights over a " +
                                     "different universe on window " + std::to_string(m));

        if (m > 0) {
            res.rebalance_days.push_back(res.oos_returns.size());
            res.turnover.push_back(turnover(res.window_weights.back(), weights));
        }
        for (std::size_t t = 0; t < win.out_len; ++t) {
            double r = 0.0;
            for (std::size_t i = 0; i < panel.n_assets(); ++i)
                r += weights.w[i] * panel.ret(win.out_begin + t, i);
            res.oos_returns.push_back(r);
        }
        nonzero_total += static_cast<double>(weights.nonzero_count());
        res.window_weights.push_back(std::move(weights));
    }

    res.avg_nonzero_assets = nonzero_total / static_cast<double>(res.windows.size());
    res.adjusted_returns =
        apply_transaction_costs(res.oos_returns, res.rebalance_days, res.turnover, tc_rate);
    res.wealth = wealth_curve(res.adjusted_returns);
    return res;
}

} // namespace topofolio::bt
