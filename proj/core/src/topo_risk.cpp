#include "topofolio/topo_risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace topofolio::risk {

void TopoRiskConfig::validate() const {
    if (sub_len < 1) throw std::invalid_argument("TopoRiskConfig: sub_len must be >= 1");
    if (hop < 1 || hop >= sub_len)
        throw std::invalid_argument("TopoRiskConfig: need 1 <= hop < sub_len");
    if (delay < 1 || dim < 1)
        throw std::invalid_argument("TopoRiskConfig: delay and dim must be >= 1");
    if (sub_len <= (dim - 1) * delay)
        throw std::invalid_argument("TopoRiskConfig: sub_len must exceed (dim-1)*delay");
    if (p < 1.0) throw std::invalid_argument("TopoRiskConfig: p must be >= 1");
    if (grid_len < 2) throw std::invalid_argument("TopoRiskConfig: grid_len must be >= 2");
}

std::vector<std::span<const double>> sub_windows(std::span<const double> series,
                                                 const TopoRiskConfig& cfg) {
    cfg.validate();
    if (series.size() < cfg.sub_len)
        throw std::invalid_argument("sub_windows: series length " +
                                    std::to_string(series.size()) + " shorter than sub_len " +
                                    std::to_string(cfg.sub_len));
    const std::size_t count = (series.size() - cfg.sub_len) / cfg.hop + 1;
    std::vector<std::span<const double>> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
        out.push_back(series.subspan(j * cfg.hop, cfg.sub_len));
    return out;
}

AssetRiskDetail asset_risk_detail(std::span<const double> series, const TopoRiskConfig& cfg) {
    const auto slices = sub_windows(series, cfg);
    if (slices.size() < 2)
        throw std::runtime_error("degenerate risk: need at least 2 sub-windows, got " +
                                 std::to_string(slices.size()));

    const tda::EmbeddingConfig embed{cfg.delay, cfg.dim};
    AssetRiskDetail detail;
    auto& diagrams = detail.diagrams;
    diagrams.reserve(slices.size());
    for (const auto& slice : slices) {
        auto cloud = tda::takens_embed(slice, embed);
        auto dist = tda::pairwise_distances(cloud);
        diagrams.push_back(tda::rips_persistence_h0(dist));
    }

    // Shared grid over all of this asset's sub-windows, 5% headroom so the
    // support is covered. A zero max death (constant series) leaves every
    // landscape identically zero; any positive grid span works then.
    double max_death = 0.0;
    std::size_t max_pairs = 0;
    for (const auto& d : diagrams) {
        max_death = std::max(max_death, d.max_death());
        max_pairs = std::max(max_pairs, d.pairs.size());
    }
    const double upper = max_death > 0.0 ? 1.05 * max_death : 1.0;
    const double step = upper / static_cast<double>(cfg.grid_len - 1);
    const std::size_t k_max = cfg.k_max > 0 ? cfg.k_max : std::max<std::size_t>(max_pairs, 1);

    auto& landscapes = detail.landscapes;
    landscapes.reserve(diagrams.size());
    detail.norms.reserve(diagrams.size());
    for (const auto& d : diagrams) {
        landscapes.push_back(tda::build_landscape(d, 0.0, step, cfg.grid_len, k_max));
        detail.norms.push_back(tda::landscape_norm(landscapes.back(), cfg.p));
    }

    detail.reference_norm = tda::landscape_norm(tda::mean_landscape(landscapes), cfg.p);
    double lambda = 0.0;
    for (double x : detail.norms) {
        const double dev = x - detail.reference_norm;
        lambda += dev * dev;
    }
    if (!std::isfinite(lambda))
        throw std::runtime_error("asset_topological_risk: non-finite risk value");
    detail.lambda = lambda;
    return detail;
}

double asset_topological_risk(std::span<const double> series, const TopoRiskConfig& cfg) {
    return asset_risk_detail(series, cfg).lambda;
}

RiskVector RiskVector::floored(double eps) const {
    RiskVector out = *this;
    for (double& l : out.lambda) l = std::max(l, eps);
    return out;
}

RiskVector risk_vector(const data::ReturnsPanel& panel, std::size_t row_begin,
                       std::size_t row_count, const TopoRiskConfig& cfg) {
    RiskVector rv;
    rv.assets = panel.assets();
    rv.lambda.reserve(panel.n_assets());
    for (std::size_t j = 0; j < panel.n_assets(); ++j) {
        const auto series = panel.column(j, row_begin, row_count);
        try {
            rv.lambda.push_back(asset_topological_risk(series, cfg));
        } catch (const std::exception& e) {
            throw std::runtime_error("asset '" + panel.assets()[j] + "': " + e.what());
        }
    }
    return rv;
}

RiskVector risk_vector(const data::ReturnsPanel& panel, const TopoRiskConfig& cfg) {
    return risk_vector(panel, 0, panel.n_dates(), cfg);
}

} // namespace topofolio::risk
