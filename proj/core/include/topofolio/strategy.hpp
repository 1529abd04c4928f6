#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "topofolio/backtest.hpp"
#include "topofolio/topo_risk.hpp"

namespace topofolio::opt {

enum class Model { TdaPo, TdaIpo, Gmv, Mv, Mcvar, Sharpe, Starr, Omega, Naive, Index };

Model parse_model(std::string_view name);
std::string model_name(Model model);

/// One configured portfolio model. `label` keys output files and defaults to
/// the model name (tda-ipo appends "-k<k>").
struct StrategySpec {
    Model model = Model::TdaPo;
    std::string label;
    std::size_t cardinality = 50;          // tda-ipo
    double alpha = 0.95;                   // mcvar / starr
    std::optional<double> omega_threshold; // omega; empty -> threshold_fn or 0
    std::size_t sharpe_samples = 5000;     // sharpe
    std::uint64_t seed = 0;                // sharpe; mixed per window
    std::string default_label() const;
};

/// Per-window Omega threshold source (e.g. the in-sample mean index return).
using ThresholdFn = std::function<double(std::size_t in_begin, std::size_t in_len)>;

/// Build the rolling-window strategy callable for a spec. The Sharpe search
/// derives a distinct deterministic seed per window from spec.seed, so reruns
/// with the same configuration reproduce outputs byte for byte.
bt::StrategyFn make_strategy(const StrategySpec& spec, const risk::TopoRiskConfig& topo_cfg,
                             ThresholdFn omega_threshold = {});

} // namespace topofolio::opt
