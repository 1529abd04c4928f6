#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "topofolio/market_data.hpp"
#include "topofolio/tda_core.hpp"

namespace topofolio::risk {

// Per-asset computations are independent and side-effect-free; results are
// identical regardless of evaluation order.

/// Parameters of the per-asset topological risk pipeline: overlapping
/// sub-windows of sub_len days shifted by hop days, Takens embedding
/// (delay, dim), landscape depth k_max (0 = all levels) on a grid_len-point
/// grid, and the L_p norm order.
struct TopoRiskConfig {
    std::size_t sub_len = 126;
    std::size_t hop = 21;
    std::size_t delay = 1;
    std::size_t dim = 3;
    double p = 1.0;
    std::size_t k_max = 1; // 0 means all landscape levels
    std::size_t grid_len = 1024;
    void validate() const;
};

/// Overlapping sub-series slice j = series[j*hop, j*hop + sub_len),
/// j = 0 .. floor((T - sub_len)/hop); trailing partial windows dropped.
/// Throws if the series is shorter than sub_len.
std::vector<std::span<const double>> sub_windows(std::span<const double> series,
                                                 const TopoRiskConfig& cfg);

/// Intermediate quantities of one asset's risk computation, kept around for
/// debugging dumps and property tests.
struct AssetRiskDetail {
    std::vector<tda::PersistenceDiagram> diagrams; // one per sub-window
    std::vector<tda::Landscape> landscapes;        // shared grid
    std::vector<double> norms;                     // per-sub-window landscape norms
    double reference_norm = 0.0;                   // norm of the pointwise mean landscape
    double lambda = 0.0; // sum of squared deviations from the reference
};

/// Full pipeline per sub-window (embed -> distances -> H0 persistence ->
/// landscape on a grid shared across the asset's sub-windows -> norm), then
/// lambda = sum_j (norm_j - reference)^2 with the reference being the norm of
/// the pointwise mean landscape. Requires at least 2 sub-windows.
AssetRiskDetail asset_risk_detail(std::span<const double> series, const TopoRiskConfig& cfg);

double asset_topological_risk(std::span<const double> series, const TopoRiskConfig& cfg);

/// Per-asset topological risks; the diagonal of the portfolio risk matrix.
struct RiskVector {
    std::vector<std::string> assets;
    std::vector<double> lambda;
    std::size_t size() const { return lambda.size(); }
    /// Copy with every entry raised to at least eps, keeping the risk matrix
    /// positive definite for downstream optimizers.
    RiskVector floored(double eps = 1e-12) const;
};

/// asset_topological_risk applied to every column of the in-sample slice
/// [row_begin, row_begin + row_count); asset order preserved. Per-asset
/// failures rethrow with the asset identifier attached.
RiskVector risk_vector(const data::ReturnsPanel& panel, std::size_t row_begin,
                       std::size_t row_count, const TopoRiskConfig& cfg);
RiskVector risk_vector(const data::ReturnsPanel& panel, const TopoRiskConfig& cfg);

} // namespace topofolio::risk
