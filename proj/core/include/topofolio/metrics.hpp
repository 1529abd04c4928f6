#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "topofolio/topo_risk.hpp"

namespace topofolio::metrics {

/// Out-of-sample performance report for one return series. Ratios whose
/// denominator degenerates are left empty (rendered as "n/a"), never NaN.
struct MetricReport {
    double alpha = 0.95;
    double rf = 0.0;
    double emr = 0.0;
    double min_return = 0.0;
    double stdev = 0.0;
    double dd = 0.0;
    double var_alpha = 0.0;
    double cvar_alpha = 0.0;
    std::optional<double> sharpe, sortino, svr, scr, rachev;
    std::optional<double> ptr; // empty when the series is too short
};

/// Mean excess return sum(R_t - rf) / T.
double emr(std::span<const double> returns, double rf = 0.0);

/// Population standard deviation (divisor T).
double stdev(std::span<const double> returns);

/// Downside deviation sqrt(sum min(R_t, 0)^2 / T).
double downside_dev(std::span<const double> returns);

struct VarCvar {
    double var = 0.0;
    double cvar = 0.0;
};

/// Historical VaR/CVaR of the loss series L = -R sorted ascending:
/// k = floor(T*alpha) + 1, VaR = L_(k), CVaR = sum_{i>=k} L_(i) / (T(1-alpha)).
/// Throws when k > T ("alpha too high for sample").
VarCvar var_cvar(std::span<const double> returns, double alpha);

struct RatioSet {
    std::optional<double> sharpe, sortino, svr, scr, rachev;
};

/// Sharpe (mu-rf)/sigma, Sortino against the semi-deviation below the mean,
/// SVR/SCR against VaR/CVaR of losses, Rachev = CVaR_a(R)/CVaR_a(-R).
RatioSet ratios(std::span<const double> returns, double alpha, double rf = 0.0);

/// Realized portfolio topological risk of a concatenated out-of-sample
/// series; empty when the series admits fewer than 2 sub-windows.
std::optional<double> realized_ptr(std::span<const double> returns,
                                   const risk::TopoRiskConfig& cfg);

MetricReport full_report(std::span<const double> returns, double alpha, double rf,
                         const risk::TopoRiskConfig& cfg);

struct TestResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// One-sided Sharpe-difference z-test of r1 against r2 (positive z favours
/// r1's Sharpe). Identical series give z = 0, p = 0.5.
TestResult z_test_sharpe(std::span<const double> r1, std::span<const double> r2);

/// One-sided F-test F = s2^2 / s1^2 against F(n-1, n-1); p is the left-tail
/// CDF value (small when series 1 is the more volatile).
TestResult f_test_variance(std::span<const double> r1, std::span<const double> r2);

/// Large-sample CVaR z-test of a target value c against the sample CVaR of
/// the (loss-oriented) series; positive z means the target exceeds the
/// sample tail. p is the upper one-sided normal tail.
TestResult z_test_cvar(std::span<const double> series, double target_cvar, double alpha);

/// Exceedance-count VaR z-test: z = (#{y_i < c} - n p) / sqrt(n p (1-p));
/// p-value is the upper one-sided normal tail.
TestResult z_test_var(std::span<const double> series, double target_threshold,
                      double p_level);

} // namespace topofolio::metrics
