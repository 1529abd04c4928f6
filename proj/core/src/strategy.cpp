#include "topofolio/strategy.hpp"

#include <stdexcept>

#include "topofolio/optimizers.hpp"

namespace topofolio::opt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

Model parse_model(std::string_view name) {
    if (name == "tda-po") return Model::TdaPo;
    if (name == "tda-ipo") return Model::TdaIpo;
    if (name == "gmv") return Model::Gmv;
    if (name == "mv") return Model::Mv;
    if (name == "mcvar") return Model::Mcvar;
    if (name == "sharpe") return Model::Sharpe;
    if (name == "starr") return Model::Starr;
    if (name == "omega") return Model::Omega;
    if (name == "naive") return Model::Naive;
    if (name == "index") return Model::Index;
    throw std::invalid_argument("unknown model '" + std::string(name) +
                                "' (expected tda-po, tda-ipo, gmv, mv, mcvar, sharpe, "
                                "starr, omega, naive or index)");
}

std::string model_name(Model model) {
    switch (model) {
    case Model::TdaPo: return "tda-po";
    case Model::TdaIpo: return "tda-ipo";
    case Model::Gmv: return "gmv";
    case Model::Mv: return "mv";
    case Model::Mcvar: return "mcvar";
    case Model::Sharpe: return "sharpe";
    case Model::Starr: return "starr";
    case Model::Omega: return "omega";
    case Model::Naive: return "naive";
    case Model::Index: return "index";
    }
    throw std::logic_error("model_name: bad enum");
}

std::string StrategySpec::default_label() const {
    if (model == Model::TdaIpo)
        return model_name(model) + "-k" + std::to_string(cardinality);
    return model_name(model);
}

bt::StrategyFn make_strategy(const StrategySpec& spec, const risk::TopoRiskConfig& topo_cfg,
                             ThresholdFn omega_threshold) {
    switch (spec.model) {
    case Model::TdaPo:
        return [topo_cfg](const data::ReturnsPanel& p, std::size_t begin, std::size_t len) {
            return solve_tda_po(risk::risk_vector(p, begin, len, topo_cfg).floored());
        };
    case Model::TdaIpo: {
        const std::size_t k = spec.cardinality;
        return [topo_cfg, k](const data::ReturnsPanel& p, std::size_t begin, std::size_t len) {
            const std::size_t kk = std::min(k, p.n_assets());
            return solve_tda_ipo(risk::risk_vector(p, begin, len, topo_cfg).floored(), kk);
        };
    }
    case Model::Gmv:
        return [](const data::ReturnsPanel& p, std::size_t begin, std::size_t len) {
            return solve_gmv(estimate_moments(p, begin, len));
        };
    case Model::Mv:
        return [](const data::ReturnsPanel& p, std::size_t begin, std::size_t len) {
            return solve_mv(estimate_moments(p, begin, len));
        };
    case Model::Mcvar: {
        const double alpha = spec.alpha;
        return [alpha](const data::ReturnsPanel& p, std::size_t begin, std::size_t len) {
            const auto scen = ScenarioSet::from_panel(p, begin, len);
            return solve_mcvar(scen, scen.mean_returns(), alpha);
        };
    }
    case Model::Sharpe: {
        const std::size_t samples = spec.sharpe_samples;
        const std::uint64_t seed = spec.seed;
        return [samples, seed](const data::ReturnsPanel& p, std::size_t begin,
                               std::size_t len) {
            const std::uint64_t window_seed = splitmix64(seed ^ splitmix64(begin));
            return solve_sharpe_random(estimate_moments(p, begin, len).regularized(),
                                       samples, window_seed);
        };
    }
    case Model::Starr: {
        const double alpha = spec.alpha;
        return [alpha](const data::ReturnsPanel& p, std::size_t begin, std::size_t len) {
            const auto scen = ScenarioSet::from_panel(p, begin, len);
            return solve_starr(scen, scen.mean_returns(), alpha);
        };
    }
    case Model::Omega: {
        const std::optional<double> fixed = spec.omega_threshold;
        return [fixed, omega_threshold](const data::ReturnsPanel& p, std::size_t begin,
                                        std::size_t len) {
            double threshold = 0.0;
            if (fixed) threshold = *fixed;
            else if (omega_threshold) threshold = omega_threshold(begin, len);
            return solve_omega(ScenarioSet::from_panel(p, begin, len), threshold);
        };
    }
    case Model::Naive:
    case Model::Index:
        // the index model runs naive weights over a single-column panel
        return [](const data::ReturnsPanel& p, std::size_t, std::size_t) {
            return naive_weights(p.assets());
        };
    }
    throw std::logic_error("make_strategy: bad enum");
}

} // namespace topofolio::opt
