#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include "topofolio/backtest.hpp"
#include "topofolio/market_data.hpp"
#include "topofolio/metrics.hpp"
#include "topofolio/optimizers.hpp"
#include "topofolio/strategy.hpp"
#include "topofolio/topo_risk.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace topofolio::cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Append-never: refuse to clobber existing artifacts unless --force.
std::ofstream open_output(const fs::path& path, bool force) {
    if (fs::exists(path) && !force)
        throw std::runtime_error("refusing to overwrite " + path.string() +
                                 " (pass --force)");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

fs::path prepare_out_dir(const Options& opt) {
    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t parse_k_max(const std::string& text) {
    if (text == "all") return 0;
    const long v = std::stol(text);
    if (v < 1) throw std::runtime_error("--k-max must be a positive integer or 'all'");
    return static_cast<std::size_t>(v);
}

risk::TopoRiskConfig topo_config(const Options& opt) {
    risk::TopoRiskConfig cfg;
    cfg.sub_len = opt.sub_len;
    cfg.hop = opt.hop;
    cfg.delay = opt.tau;
    cfg.dim = opt.dim;
    cfg.p = opt.p;
    cfg.k_max = parse_k_max(opt.k_max);
    cfg.grid_len = opt.grid_len;
    cfg.validate();
    return cfg;
}

data::WindowSpec window_spec(const Options& opt) {
    data::WindowSpec spec{opt.in_len, opt.out_len, opt.shift};
    spec.validate();
    return spec;
}

struct LoadedData {
    data::ReturnsPanel full;       // complete assets, index included
    data::ReturnsPanel investable; // index column removed
    std::size_t index_col = 0;     // valid iff has_index
    bool has_index = false;
};

LoadedData load_returns(const Options& opt) {
    if (opt.data_path.empty()) throw std::runtime_error("--data is required");
    auto prices = data::load_prices(opt.data_path);
    const auto complete = data::drop_incomplete_assets(prices);
    if (complete.n_assets() < prices.n_assets())
        std::cerr << "dropped " << prices.n_assets() - complete.n_assets()
                  << " assets with missing observations\n";
    LoadedData out;
    out.full = data::compute_returns(complete);
    if (!opt.index_asset.empty()) {
        out.index_col = out.full.asset_index(opt.index_asset);
        out.has_index = true;
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < out.full.n_assets(); ++j)
            if (j != out.index_col) keep.push_back(j);
        if (keep.empty()) throw std::runtime_error("no investable assets besides the index");
        out.investable = out.full.select_assets(keep);
    } else {
        out.investable = out.full;
    }
    return out;
}

std::pair<std::size_t, std::size_t> resolve_slice(const Options& opt, std::size_t rows) {
    const std::size_t begin = opt.start_row;
    if (begin >= rows) throw std::runtime_error("--start-row beyond the panel");
    const std::size_t len = opt.rows == 0 ? rows - begin : opt.rows;
    if (begin + len > rows) throw std::runtime_error("--rows runs past the panel");
    return {begin, len};
}

opt::StrategySpec build_spec(const Options& opt, const std::string& model_name) {
    opt::StrategySpec spec;
    spec.model = opt::parse_model(model_name);
    spec.cardinality = opt.k;
    spec.alpha = opt.alpha;
    spec.omega_threshold = opt.omega_threshold;
    spec.sharpe_samples = opt.sharpe_samples;
    spec.seed = opt.seed;
    spec.label = spec.default_label();
    return spec;
}

opt::ThresholdFn index_mean_threshold(const LoadedData& loaded) {
    if (!loaded.has_index) return {};
    const auto* full = &loaded.full;
    const std::size_t col = loaded.index_col;
    return [full, col](std::size_t begin, std::size_t len) {
        const auto idx = full->column(col, begin, len);
        return std::accumulate(idx.begin(), idx.end(), 0.0) /
               static_cast<double>(idx.size());
    };
}

// ---------------------------------------------------------------------------
// metrics table shared by backtest, report and compare

struct StrategySeries {
    std::string name;
    std::vector<double> oos;
    std::vector<double> turnover;
    double avg_assets = 0.0;
};

double mean_turnover(const StrategySeries& s) {
    if (s.turnover.empty()) return 0.0;
    return std::accumulate(s.turnover.begin(), s.turnover.end(), 0.0) /
           static_cast<double>(s.turnover.size());
}

struct TableRow {
    std::string name;
    int direction; // +1 higher is better, -1 lower, 0 unranked
    std::vector<std::optional<double>> values;
};

struct Table {
    std::vector<std::string> strategies;
    std::vector<TableRow> rows;
    // per-strategy markers: Sharpe significance vs the baseline and
    // risk-worse-than-naive flags
    std::vector<bool> sharpe_sig, stdev_worse, var_worse, cvar_worse;
};

Table build_table(const std::vector<StrategySeries>& strats, const Options& opt,
                  const risk::TopoRiskConfig& topo, double alpha, double rf) {
    Table table;
    std::vector<metrics::MetricReport> reports;
    for (const auto& s : strats) {
        table.strategies.push_back(s.name);
        reports.push_back(metrics::full_report(s.oos, alpha, rf, topo));
    }

    auto add = [&](const std::string& name, int dir,
                   const std::function<std::optional<double>(std::size_t)>& get) {
        TableRow row{name, dir, {}};
        for (std::size_t i = 0; i < strats.size(); ++i) row.values.push_back(get(i));
        table.rows.push_back(std::move(row));
    };
    add("EMR", +1, [&](std::size_t i) { return std::optional<double>(reports[i].emr); });
    add("Min", +1,
        [&](std::size_t i) { return std::optional<double>(reports[i].min_return); });
    add("Stdev", -1, [&](std::size_t i) { return std::optional<double>(reports[i].stdev); });
    add("DD", -1, [&](std::size_t i) { return std::optional<double>(reports[i].dd); });
    add("VaR", -1,
        [&](std::size_t i) { return std::optional<double>(reports[i].var_alpha); });
    add("CVaR", -1,
        [&](std::size_t i) { return std::optional<double>(reports[i].cvar_alpha); });
    add("SR", +1, [&](std::size_t i) { return reports[i].sharpe; });
    add("SVR", +1, [&](std::size_t i) { return reports[i].svr; });
    add("SCR", +1, [&](std::size_t i) { return reports[i].scr; });
    add("Sortino", +1, [&](std::size_t i) { return reports[i].sortino; });
    add("Rachev", +1, [&](std::size_t i) { return reports[i].rachev; });
    add("Assets", 0,
        [&](std::size_t i) { return std::optional<double>(strats[i].avg_assets); });
    add("PTR", -1, [&](std::size_t i) { return reports[i].ptr; });
    add("Turnover", -1,
        [&](std::size_t i) { return std::optional<double>(mean_turnover(strats[i])); });

    const std::size_t n = strats.size();
    table.sharpe_sig.assign(n, false);
    table.stdev_worse.assign(n, false);
    table.var_worse.assign(n, false);
    table.cvar_worse.assign(n, false);

    // Sharpe z-test of the baseline (default: first strategy) against others
    std::size_t base = 0;
    if (!opt.baseline.empty()) {
        auto it = std::find(table.strategies.begin(), table.strategies.end(), opt.baseline);
        if (it == table.strategies.end())
            throw std::runtime_error("baseline strategy '" + opt.baseline +
                                     "' is not in the summary");
        base = static_cast<std::size_t>(it - table.strategies.begin());
    }
    const double sharpe_p = 1.0 - opt.sharpe_confidence;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == base) continue;
        try {
            table.sharpe_sig[i] =
                metrics::z_test_sharpe(strats[base].oos, strats[i].oos).p_value < sharpe_p;
        } catch (const std::exception&) {
            // degenerate series leave the marker unset
        }
    }

    // risk tests flag strategies statistically worse than the naive portfolio
    auto naive_it = std::find(table.strategies.begin(), table.strategies.end(), "naive");
    if (naive_it != table.strategies.end()) {
        const auto naive_idx =
            static_cast<std::size_t>(naive_it - table.strategies.begin());
        const auto& naive = strats[naive_idx];
        const double risk_p = 1.0 - opt.risk_confidence;
        std::vector<double> naive_losses(naive.oos.size());
        for (std::size_t t = 0; t < naive.oos.size(); ++t) naive_losses[t] = -naive.oos[t];
        const auto naive_vc = metrics::var_cvar(naive.oos, alpha);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == naive_idx) continue;
            try {
                table.stdev_worse[i] =
                    metrics::f_test_variance(strats[i].oos, naive.oos).p_value < risk_p;
                // exceedances of the strategy below the naive return quantile
                table.var_worse[i] =
                    metrics::z_test_var(strats[i].oos, -naive_vc.var, 1.0 - alpha)
                        .p_value < risk_p;
                // naive loss tail against the strategy's CVaR as the target
                const double strat_cvar = metrics::var_cvar(strats[i].oos, alpha).cvar;
                table.cvar_worse[i] =
                    metrics::z_test_cvar(naive_losses, strat_cvar, alpha).p_value < risk_p;
            } catch (const std::exception&) {
            }
        }
    }
    return table;
}

std::string sig_cell(const Table& t, const std::string& row, std::size_t i) {
    if (row == "SR" && t.sharpe_sig[i]) return "*";
    if (row == "Stdev" && t.stdev_worse[i]) return "!";
    if (row == "VaR" && t.var_worse[i]) return "!";
    if (row == "CVaR" && t.cvar_worse[i]) return "!";
    return "";
}

// rank 1 for the best distinct value, 2 for the runner-up; ties share a rank
std::vector<std::string> row_ranks(const TableRow& row) {
    std::vector<std::string> out(row.values.size());
    if (row.direction == 0) return out;
    std::vector<double> defined;
    for (const auto& v : row.values)
        if (v) defined.push_back(*v);
    if (defined.size() < 2) return out;
    std::sort(defined.begin(), defined.end());
    if (row.direction > 0) std::reverse(defined.begin(), defined.end());
    defined.erase(std::unique(defined.begin(), defined.end()), defined.end());
    for (std::size_t i = 0; i < row.values.size(); ++i) {
        if (!row.values[i]) continue;
        if (*row.values[i] == defined[0]) out[i] = "1";
        else if (defined.size() > 1 && *row.values[i] == defined[1]) out[i] = "2";
    }
    return out;
}

void write_table_csv(const Table& table, const fs::path& path, bool force, bool ranks) {
    auto out = open_output(path, force);
    out << "metric";
    for (const auto& s : table.strategies) {
        out << "," << s;
        if (ranks) out << "," << s << "_rank";
        out << "," << s << "_sig";
    }
    out << "\n";
    for (const auto& row : table.rows) {
        const auto rank = row_ranks(row);
        out << row.name;
        for (std::size_t i = 0; i < table.strategies.size(); ++i) {
            out << "," << (row.values[i] ? fmt(*row.values[i]) : "n/a");
            if (ranks) out << "," << rank[i];
            out << "," << sig_cell(table, row.name, i);
        }
        out << "\n";
    }
}

json table_to_json(const Table& table) {
    json strategies = json::object();
    for (std::size_t i = 0; i < table.strategies.size(); ++i) {
        json metrics_obj = json::object();
        for (const auto& row : table.rows)
            metrics_obj[row.name] = row.values[i] ? json(*row.values[i]) : json(nullptr);
        metrics_obj["sharpe_significant"] = table.sharpe_sig[i];
        metrics_obj["stdev_worse_than_naive"] = table.stdev_worse[i];
        metrics_obj["var_worse_than_naive"] = table.var_worse[i];
        metrics_obj["cvar_worse_than_naive"] = table.cvar_worse[i];
        strategies[table.strategies[i]] = std::move(metrics_obj);
    }
    return strategies;
}

void print_table(const Table& table) {
    std::printf("%-10s", "metric");
    for (const auto& s : table.strategies) std::printf(" %14s", s.c_str());
    std::printf("\n");
    for (const auto& row : table.rows) {
        std::printf("%-10s", row.name.c_str());
        for (std::size_t i = 0; i < table.strategies.size(); ++i) {
            if (row.values[i]) {
                char cell[32];
                std::snprintf(cell, sizeof cell, "%.4e%s", *row.values[i],
                              sig_cell(table, row.name, i).c_str());
                std::printf(" %14s", cell);
            } else {
                std::printf(" %14s", "n/a");
            }
        }
        std::printf("\n");
    }
}

std::vector<StrategySeries> series_from_summary(const json& summary) {
    std::vector<StrategySeries> out;
    for (const auto& s : summary.at("strategies")) {
        StrategySeries ss;
        ss.name = s.at("name").get<std::string>();
        ss.oos = s.at("oos_returns").get<std::vector<double>>();
        ss.turnover = s.at("turnover").get<std::vector<double>>();
        ss.avg_assets = s.at("avg_nonzero_assets").get<double>();
        out.push_back(std::move(ss));
    }
    return out;
}

risk::TopoRiskConfig topo_from_summary(const json& summary) {
    const auto& t = summary.at("topo");
    risk::TopoRiskConfig cfg;
    cfg.sub_len = t.at("sub_len").get<std::size_t>();
    cfg.hop = t.at("hop").get<std::size_t>();
    cfg.delay = t.at("tau").get<std::size_t>();
    cfg.dim = t.at("dim").get<std::size_t>();
    cfg.p = t.at("p").get<double>();
    cfg.k_max = t.at("k_max").get<std::size_t>();
    cfg.grid_len = t.at("grid_len").get<std::size_t>();
    return cfg;
}

json load_summary(const Options& opt) {
    if (opt.summary_path.empty()) throw std::runtime_error("--summary is required");
    std::ifstream in(opt.summary_path);
    if (!in) throw std::runtime_error("cannot open summary " + opt.summary_path);
    json summary;
    in >> summary;
    return summary;
}

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

// ---------------------------------------------------------------------------

int cmd_ingest(const Options& opt) {
    return guarded([&] {
        const auto loaded = load_returns(opt);
        const auto& panel = loaded.full;
        const auto dir = prepare_out_dir(opt);
        auto out = open_output(dir / "returns.csv", opt.force);
        out << "date";
        for (const auto& a : panel.assets()) out << "," << a;
        out << "\n";
        for (std::size_t t = 0; t < panel.n_dates(); ++t) {
            out << panel.dates()[t];
            for (std::size_t j = 0; j < panel.n_assets(); ++j)
                out << "," << fmt(panel.ret(t, j));
            out << "\n";
        }
        std::printf("ingested %zu assets x %zu return rows -> %s\n", panel.n_assets(),
                    panel.n_dates(), (dir / "returns.csv").string().c_str());
    });
}

int cmd_risk(const Options& opt) {
    return guarded([&] {
        const auto cfg = topo_config(opt);
        const auto loaded = load_returns(opt);
        const auto& panel = loaded.investable;
        const auto [begin, len] = resolve_slice(opt, panel.n_dates());
        const auto rv = risk::risk_vector(panel, begin, len, cfg);

        const auto dir = prepare_out_dir(opt);
        auto out = open_output(dir / "risk.csv", opt.force);
        out << "asset,lambda\n";
        for (std::size_t i = 0; i < rv.size(); ++i)
            out << rv.assets[i] << "," << fmt(rv.lambda[i]) << "\n";
        std::printf("wrote %zu asset risks -> %s\n", rv.size(),
                    (dir / "risk.csv").string().c_str());

        if (opt.dump_tda) {
            for (std::size_t i = 0; i < panel.n_assets(); ++i) {
                const auto series = panel.column(i, begin, len);
                const auto detail = risk::asset_risk_detail(series, cfg);
                const auto& asset = panel.assets()[i];
                auto dout = open_output(dir / ("diagrams_" + asset + ".csv"), opt.force);
                dout << "subwindow,birth,death\n";
                for (std::size_t j = 0; j < detail.diagrams.size(); ++j)
                    for (const auto& pr : detail.diagrams[j].pairs)
                        dout << j << "," << fmt(pr.birth) << "," << fmt(pr.death) << "\n";
                auto lout = open_output(dir / ("landscapes_" + asset + ".csv"), opt.force);
                lout << "subwindow,k,t,value\n";
                for (std::size_t j = 0; j < detail.landscapes.size(); ++j) {
                    const auto& land = detail.landscapes[j];
                    for (std::size_t kk = 0; kk < land.k_max; ++kk)
                        for (std::size_t g = 0; g < land.grid_len; ++g)
                            lout << j << "," << kk + 1 << "," << fmt(land.grid_point(g))
                                 << "," << fmt(land.at(kk, g)) << "\n";
                }
            }
            std::printf("dumped diagrams and landscapes for %zu assets\n", panel.n_assets());
        }
    });
}

int cmd_optimize(const Options& opt) {
    return guarded([&] {
        if (opt.models.size() != 1)
            throw std::runtime_error("optimize needs exactly one --model");
        const auto cfg = topo_config(opt);
        const auto loaded = load_returns(opt);
        const auto spec = build_spec(opt, opt.models[0]);

        data::ReturnsPanel index_panel;
        const data::ReturnsPanel* panel = &loaded.investable;
        if (spec.model == opt::Model::Index) {
            if (!loaded.has_index) throw std::runtime_error("model 'index' needs --index-asset");
            index_panel = loaded.full.select_assets({loaded.index_col});
            panel = &index_panel;
        }
        const auto [begin, len] = resolve_slice(opt, panel->n_dates());
        const auto weights = opt::make_strategy(spec, cfg, index_mean_threshold(loaded))(
                                 *panel, begin, len)
                                 .normalized();

        const auto dir = prepare_out_dir(opt);
        auto out = open_output(dir / "weights.csv", opt.force);
        out << "asset,weight\n";
        for (std::size_t i = 0; i < weights.size(); ++i)
            out << weights.assets[i] << "," << fmt(weights.w[i]) << "\n";
        std::printf("%s holds %zu assets -> %s\n", spec.label.c_str(),
                    weights.nonzero_count(), (dir / "weights.csv").string().c_str());
    });
}

int cmd_backtest(const Options& opt) {
    return guarded([&] {
        if (opt.models.empty())
            throw std::runtime_error("backtest needs at least one --model");
        if (opt.tc_rates.empty()) throw std::runtime_error("need at least one --tc-rate");
        const auto cfg = topo_config(opt);
        const auto spec = window_spec(opt);
        const auto loaded = load_returns(opt);
        const auto threshold = index_mean_threshold(loaded);

        const auto dir = prepare_out_dir(opt);
        std::vector<StrategySeries> series;
        json strategies_json = json::array();
        std::vector<std::string> labels;

        for (const auto& name : opt.models) {
            auto sspec = build_spec(opt, name);
            if (std::find(labels.begin(), labels.end(), sspec.label) != labels.end())
                throw std::runtime_error("duplicate strategy label " + sspec.label);
            labels.push_back(sspec.label);

            const data::ReturnsPanel* panel = &loaded.investable;
            data::ReturnsPanel index_panel;
            if (sspec.model == opt::Model::Index) {
                if (!loaded.has_index)
                    throw std::runtime_error("model 'index' needs --index-asset");
                index_panel = loaded.full.select_assets({loaded.index_col});
                panel = &index_panel;
            }

            const auto fn = opt::make_strategy(sspec, cfg, threshold);
            const auto res =
                bt::run_backtest(*panel, sspec.label, fn, spec, opt.tc_rates[0]);

            {
                auto out =
                    open_output(dir / ("weights_" + sspec.label + ".csv"), opt.force);
                out << "window,asset,weight\n";
                for (std::size_t m = 0; m < res.window_weights.size(); ++m) {
                    const auto& w = res.window_weights[m];
                    for (std::size_t i = 0; i < w.size(); ++i)
                        out << m << "," << w.assets[i] << "," << fmt(w.w[i]) << "\n";
                }
            }
            {
                auto out =
                    open_output(dir / ("oos_returns_" + sspec.label + ".csv"), opt.force);
                out << "day,date,return\n";
                std::size_t day = 0;
                for (const auto& win : res.windows)
                    for (std::size_t t = 0; t < win.out_len; ++t, ++day)
                        out << day << "," << panel->dates()[win.out_begin + t] << ","
                            << fmt(res.oos_returns[day]) << "\n";
            }
            {
                auto out = open_output(dir / ("wealth_" + sspec.label + ".csv"), opt.force);
                out << "day";
                std::vector<std::vector<double>> curves;
                for (double rate : opt.tc_rates) {
                    out << ",wealth_tc" << fmt_short(rate);
                    curves.push_back(bt::wealth_curve(bt::apply_transaction_costs(
                        res.oos_returns, res.rebalance_days, res.turnover, rate)));
                }
                out << "\n";
                for (std::size_t t = 0; t < curves[0].size(); ++t) {
                    out << t;
                    for (const auto& c : curves) out << "," << fmt(c[t]);
                    out << "\n";
                }
            }

            json sj;
            sj["name"] = sspec.label;
            sj["model"] = opt::model_name(sspec.model);
            sj["oos_returns"] = res.oos_returns;
            sj["turnover"] = res.turnover;
            sj["rebalance_days"] = res.rebalance_days;
            sj["avg_nonzero_assets"] = res.avg_nonzero_assets;
            strategies_json.push_back(std::move(sj));
            series.push_back(
                {sspec.label, res.oos_returns, res.turnover, res.avg_nonzero_assets});
            std::printf("%-14s %zu windows, %zu oos days, final wealth %.4f\n",
                        sspec.label.c_str(), res.windows.size(), res.oos_returns.size(),
                        res.wealth.back());
        }

        const auto table = build_table(series, opt, cfg, opt.alpha, opt.rf);
        write_table_csv(table, dir / "metrics.csv", opt.force, false);

        json summary;
        summary["alpha"] = opt.alpha;
        summary["rf"] = opt.rf;
        summary["seed"] = opt.seed;
        summary["tc_rate"] = opt.tc_rates[0];
        summary["tc_rates"] = opt.tc_rates;
        summary["window"] = {
            {"in_len", spec.in_len},
            {"out_len", spec.out_len},
            {"shift", spec.shift},
            {"count", data::window_count(loaded.investable.n_dates(), spec)}};
        summary["topo"] = {{"sub_len", cfg.sub_len}, {"hop", cfg.hop},
                           {"tau", cfg.delay},       {"dim", cfg.dim},
                           {"p", cfg.p},             {"k_max", cfg.k_max},
                           {"grid_len", cfg.grid_len}};
        summary["assets"] = loaded.investable.assets();
        summary["index_asset"] =
            opt.index_asset.empty() ? json(nullptr) : json(opt.index_asset);
        summary["strategies"] = std::move(strategies_json);
        auto out = open_output(dir / "summary.json", opt.force);
        out << summary.dump(2) << "\n";
        std::printf("wrote summary -> %s\n", (dir / "summary.json").string().c_str());
    });
}

int cmd_report(const Options& opt) {
    return guarded([&] {
        const auto summary = load_summary(opt);
        const auto series = series_from_summary(summary);
        if (series.empty()) throw std::runtime_error("summary has no strategies");
        const auto cfg = topo_from_summary(summary);
        const auto table = build_table(series, opt, cfg, summary.at("alpha").get<double>(),
                                       summary.at("rf").get<double>());
        const auto dir = prepare_out_dir(opt);
        write_table_csv(table, dir / "report.csv", opt.force, false);
        auto out = open_output(dir / "report.json", opt.force);
        json j;
        j["alpha"] = summary.at("alpha");
        j["sharpe_confidence"] = opt.sharpe_confidence;
        j["risk_confidence"] = opt.risk_confidence;
        j["strategies"] = table_to_json(table);
        out << j.dump(2) << "\n";
        print_table(table);
    });
}

int cmd_compare(const Options& opt) {
    return guarded([&] {
        const auto summary = load_summary(opt);
        const auto series = series_from_summary(summary);
        if (series.size() < 2)
            throw std::runtime_error("compare needs at least 2 strategies in the summary");
        const auto cfg = topo_from_summary(summary);
        const auto table = build_table(series, opt, cfg, summary.at("alpha").get<double>(),
                                       summary.at("rf").get<double>());
        const auto dir = prepare_out_dir(opt);
        write_table_csv(table, dir / "compare.csv", opt.force, true);
        print_table(table);
        std::printf("ranked table -> %s\n", (dir / "compare.csv").string().c_str());
    });
}

} // namespace topofolio::cli
