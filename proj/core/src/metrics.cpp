#include "topofolio/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "topofolio/stats.hpp"

namespace topofolio::metrics {

namespace {

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// CVaR of an already loss-oriented series per the k = floor(T*alpha)+1 rule.
VarCvar var_cvar_of_losses(std::vector<double> losses, double alpha) {
    const std::size_t T = losses.size();
    const std::size_t k =
        static_cast<std::size_t>(std::floor(static_cast<double>(T) * alpha)) + 1;
    if (k > T)
        throw std::invalid_argument("var_cvar: alpha too high for sample (k > T)");
    std::sort(losses.begin(), losses.end());
    VarCvar out;
    out.var = losses[k - 1];
    double sum = 0.0;
    for (std::size_t i = k - 1; i < T; ++i) sum += losses[i];
    out.cvar = sum / (static_cast<double>(T) * (1.0 - alpha));
    return out;
}

} // namespace

double emr(std::span<const double> returns, double rf) {
    if (returns.empty()) throw std::invalid_argument("emr: empty return series");
    double s = 0.0;
    for (double r : returns) s += r - rf;
    return s / static_cast<double>(returns.size());
}

double stdev(std::span<const double> returns) {
    if (returns.empty()) throw std::invalid_argument("stdev: empty return series");
    const double m = mean(returns);
    double s = 0.0;
    for (double r : returns) s += (m - r) * (m - r);
    return std::sqrt(s / static_cast<double>(returns.size()));
}

double downside_dev(std::span<const double> returns) {
    if (returns.empty()) throw std::invalid_argument("downside_dev: empty return series");
    double s = 0.0;
    for (double r : returns) {
        const double d = std::min(r, 0.0);
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(returns.size()));
}

VarCvar var_cvar(std::span<const double> returns, double alpha) {
    if (returns.empty()) throw std::invalid_argument("var_cvar: empty return series");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("var_cvar: alpha must be in (0, 1)");
    std::vector<double> losses(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) losses[i] = -returns[i];
    return var_cvar_of_losses(std::move(losses), alpha);
}

RatioSet ratios(std::span<const double> returns, double alpha, double rf) {
    if (returns.empty()) throw std::invalid_argument("ratios: empty return series");
    const double excess = emr(returns, rf);
    const double sigma = stdev(returns);

    RatioSet out;
    if (sigma > 0.0) out.sharpe = excess / sigma;

    // semi-deviation below the mean
    const double m = mean(returns);
    double semi = 0.0;
    for (double r : returns) {
        const double d = std::min(r - m, 0.0);
        semi += d * d;
    }
    semi = std::sqrt(semi / static_cast<double>(returns.size()));
    if (semi > 0.0) out.sortino = excess / semi;

    const VarCvar vc = var_cvar(returns, alpha);
    if (vc.var > 0.0) out.svr = excess / vc.var;
    if (vc.cvar > 0.0) out.scr = excess / vc.cvar;

    // Rachev: upper return tail over lower return tail, both through the
    // same sorted-tail CVaR rule.
    std::vector<double> gains(returns.begin(), returns.end());
    const double upper = var_cvar_of_losses(std::move(gains), alpha).cvar;
    std::vector<double> losses(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) losses[i] = -returns[i];
    const double lower = var_cvar_of_losses(std::move(losses), alpha).cvar;
    if (lower != 0.0) out.rachev = upper / lower;
    return out;
}

std::optional<double> realized_ptr(std::span<const double> returns,
                                   const risk::TopoRiskConfig& cfg) {
    if (returns.size() < cfg.sub_len + cfg.hop) return std::nullopt;
    return risk::asset_topological_risk(returns, cfg);
}

MetricReport full_report(std::span<const double> returns, double alpha, double rf,
                         const risk::TopoRiskConfig& cfg) {
    MetricReport rep;
    rep.alpha = alpha;
    rep.rf = rf;
    rep.emr = emr(returns, rf);
    rep.min_return = *std::min_element(returns.begin(), returns.end());
    rep.stdev = stdev(returns);
    rep.dd = downside_dev(returns);
    const VarCvar vc = var_cvar(returns, alpha);
    rep.var_alpha = vc.var;
    rep.cvar_alpha = vc.cvar;
    const RatioSet rs = ratios(returns, alpha, rf);
    rep.sharpe = rs.sharpe;
    rep.sortino = rs.sortino;
    rep.svr = rs.svr;
    rep.scr = rs.scr;
    rep.rachev = rs.rachev;
    rep.ptr = realized_ptr(returns, cfg);
    return rep;
}

TestResult z_test_sharpe(std::span<const double> r1, std::span<const double> r2) {
    if (r1.size() != r2.size() || r1.size() < 2)
        throw std::invalid_argument("z_test_sharpe: need equal lengths >= 2");
    const double n = static_cast<double>(r1.size());
    const double mu1 = mean(r1), mu2 = mean(r2);
    double v1 = 0.0, v2 = 0.0, cov = 0.0;
    for (std::size_t t = 0; t < r1.size(); ++t) {
        v1 += (r1[t] - mu1) * (r1[t] - mu1);
        v2 += (r2[t] - mu2) * (r2[t] - mu2);
        cov += (r1[t] - mu1) * (r2[t] - mu2);
    }
    v1 /= n;
    v2 /= n;
    cov /= n;
    const double s1 = std::sqrt(v1), s2 = std::sqrt(v2);
    if (!(s1 > 0.0) || !(s2 > 0.0))
        throw std::invalid_argument("z_test_sharpe: zero standard deviation");

    const double numerator = s2 * mu1 - s1 * mu2;
    TestResult out;
    if (numerator == 0.0) {
        out.statistic = 0.0;
        out.p_value = 0.5;
        return out;
    }
    const double upsilon = (2.0 * v1 * v2 - 2.0 * s1 * s2 * cov + 0.5 * mu1 * mu1 * v2 +
                            0.5 * mu2 * mu2 * v1 - (mu1 * mu2 / (s1 * s2)) * cov * cov) /
                           n;
    if (!(upsilon > 0.0))
        throw std::runtime_error("z_test_sharpe: degenerate variance estimate");
    out.statistic = numerator / std::sqrt(upsilon);
    out.p_value = 1.0 - stats::normal_cdf(out.statistic);
    return out;
}

TestResult f_test_variance(std::span<const double> r1, std::span<const double> r2) {
    if (r1.size() != r2.size() || r1.size() < 2)
        throw std::invalid_argument("f_test_variance: need equal lengths >= 2");
    const double n = static_cast<double>(r1.size());
    const double mu1 = mean(r1), mu2 = mean(r2);
    double v1 = 0.0, v2 = 0.0;
    for (std::size_t t = 0; t < r1.size(); ++t) {
        v1 += (r1[t] - mu1) * (r1[t] - mu1);
        v2 += (r2[t] - mu2) * (r2[t] - mu2);
    }
    v1 /= (n - 1.0);
    v2 /= (n - 1.0);
    if (!(v1 > 0.0) || !(v2 > 0.0))
        throw std::invalid_argument("f_test_variance: zero sample variance");
    TestResult out;
    out.statistic = v2 / v1;
    out.p_value = stats::f_cdf(out.statistic, n - 1.0, n - 1.0);
    return out;
}

TestResult z_test_cvar(std::span<const double> series, double target_cvar, double alpha) {
    const std::size_t n = series.size();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("z_test_cvar: alpha must be in (0, 1)");
    const double tail = static_cast<double>(n) * (1.0 - alpha);
    if (tail < 1.0)
        throw std::invalid_argument("z_test_cvar: need n(1-alpha) >= 1");
    const std::size_t cut =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * alpha));
    if (cut < 1 || cut >= n)
        throw std::invalid_argument("z_test_cvar: degenerate tail split");

    std::vector<double> y(series.begin(), series.end());
    std::sort(y.begin(), y.end());
    const double var_hat = y[cut - 1]; // y_{(n*alpha)}, 1-based
    double cvar_hat = 0.0;
    for (std::size_t i = cut; i < n; ++i) cvar_hat += y[i];
    cvar_hat /= tail;

    double spread = 0.0;
    for (std::size_t i = cut; i < n; ++i) spread += (y[i] - cvar_hat) * (y[i] - cvar_hat);
    spread /= tail;
    const double denom2 = spread + alpha * (cvar_hat - var_hat) * (cvar_hat - var_hat);

    TestResult out;
    if (target_cvar == cvar_hat) {
        out.statistic = 0.0;
        out.p_value = 0.5;
        return out;
    }
    if (!(denom2 > 0.0))
        throw std::runtime_error("z_test_cvar: degenerate tail (zero denominator)");
    out.statistic = std::sqrt(tail) * (target_cvar - cvar_hat) / std::sqrt(denom2);
    out.p_value = 1.0 - stats::normal_cdf(out.statistic);
    return out;
}

TestResult z_test_var(std::span<const double> series, double target_threshold,
                      double p_level) {
    if (series.empty()) throw std::invalid_argument("z_test_var: empty series");
    if (!(p_level > 0.0 && p_level < 1.0))
        throw std::invalid_argument("z_test_var: p_level must be in (0, 1)");
    const double n = static_cast<double>(series.size());
    double count = 0.0;
    for (double y : series)
        if (y < target_threshold) count += 1.0;
    TestResult out;
    out.statistic = (count - n * p_level) / std::sqrt(n * p_level * (1.0 - p_level));
    out.p_value = 1.0 - stats::normal_cdf(out.statistic);
    return out;
}

} // namespace topofolio::metrics
