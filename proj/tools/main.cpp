#include <CLI11.hpp>

#include "commands.hpp"

using topofolio::cli::Options;

int main(int argc, char** argv) {
    CLI::App app{"topofolio - topological risk portfolio toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "TOML config with one [subcommand] section per command; "
                   "flags override config keys of the same name");

    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--data", opt.data_path, "price CSV (date column + tickers)")
            ->envname("TOPOFOLIO_DATA");
        cmd->add_option("--out-dir", opt.out_dir, "output directory")
            ->envname("TOPOFOLIO_OUT_DIR");
        cmd->add_flag("--force", opt.force, "overwrite existing output files")
            ->envname("TOPOFOLIO_FORCE");
        cmd->add_option("--index-asset", opt.index_asset,
                        "benchmark column excluded from the investable universe")
            ->envname("TOPOFOLIO_INDEX_ASSET");
    };
    auto add_topo = [&](CLI::App* cmd) {
        cmd->add_option("--sub-len", opt.sub_len, "sub-window length in days")
            ->envname("TOPOFOLIO_SUB_LEN");
        cmd->add_option("--hop", opt.hop, "sub-window shift in days")
            ->envname("TOPOFOLIO_HOP");
        cmd->add_option("--tau", opt.tau, "embedding delay")->envname("TOPOFOLIO_TAU");
        cmd->add_option("--dim", opt.dim, "embedding dimension")->envname("TOPOFOLIO_DIM");
        cmd->add_option("--p", opt.p, "landscape norm order (>= 1)")
            ->envname("TOPOFOLIO_P");
        cmd->add_option("--k-max", opt.k_max, "landscape levels: integer or 'all'")
            ->envname("TOPOFOLIO_K_MAX");
        cmd->add_option("--grid-len", opt.grid_len, "landscape grid points")
            ->envname("TOPOFOLIO_GRID_LEN");
    };
    auto add_window = [&](CLI::App* cmd) {
        cmd->add_option("--in-len", opt.in_len, "in-sample days per window")
            ->envname("TOPOFOLIO_IN_LEN");
        cmd->add_option("--out-len", opt.out_len, "out-of-sample days per window")
            ->envname("TOPOFOLIO_OUT_LEN");
        cmd->add_option("--shift", opt.shift, "window shift in days")
            ->envname("TOPOFOLIO_SHIFT");
    };
    auto add_strategy = [&](CLI::App* cmd, bool multi) {
        auto* m = cmd->add_option("--model", opt.models,
                                  "tda-po|tda-ipo|gmv|mv|mcvar|sharpe|starr|omega|naive|index");
        if (!multi) m->expected(1);
        cmd->add_option("--k", opt.k, "cardinality for tda-ipo")->envname("TOPOFOLIO_K");
        cmd->add_option("--alpha", opt.alpha, "confidence level for VaR/CVaR models")
            ->envname("TOPOFOLIO_ALPHA");
        cmd->add_option("--omega-threshold", opt.omega_threshold,
                        "omega threshold (default: in-sample mean index return, else 0)");
        cmd->add_option("--sharpe-samples", opt.sharpe_samples,
                        "random portfolios for the Sharpe search");
        cmd->add_option("--seed", opt.seed, "random seed")->envname("TOPOFOLIO_SEED");
    };
    auto add_slice = [&](CLI::App* cmd) {
        cmd->add_option("--start-row", opt.start_row, "first return row of the slice");
        cmd->add_option("--rows", opt.rows, "slice length (0 = to the end)");
    };

    auto* ingest =
        app.add_subcommand("ingest", "parse prices, drop incomplete assets, write returns");
    add_common(ingest);

    auto* riskc = app.add_subcommand("risk", "per-asset topological risk as asset,lambda");
    add_common(riskc);
    add_topo(riskc);
    add_slice(riskc);
    riskc->add_flag("--dump-tda", opt.dump_tda,
                    "also dump per-asset persistence diagrams and landscapes");

    auto* optimize = app.add_subcommand("optimize", "solve one portfolio on a return slice");
    add_common(optimize);
    add_topo(optimize);
    add_strategy(optimize, false);
    add_slice(optimize);

    auto* backtest = app.add_subcommand("backtest", "rolling-window backtest of strategies");
    add_common(backtest);
    add_topo(backtest);
    add_window(backtest);
    add_strategy(backtest, true);
    backtest->add_option("--tc-rate", opt.tc_rates,
                         "transaction cost rates (first is primary)")
        ->envname("TOPOFOLIO_TC_RATE");
    backtest->add_option("--rf", opt.rf, "risk-free rate for the metrics table");

    auto add_reporting = [&](CLI::App* cmd) {
        cmd->add_option("--summary", opt.summary_path, "summary.json from a backtest run")
            ->envname("TOPOFOLIO_SUMMARY");
        cmd->add_option("--out-dir", opt.out_dir, "output directory")
            ->envname("TOPOFOLIO_OUT_DIR");
        cmd->add_flag("--force", opt.force, "overwrite existing output files");
        cmd->add_option("--baseline", opt.baseline,
                        "strategy the Sharpe test compares against (default: first)");
        cmd->add_option("--sharpe-confidence", opt.sharpe_confidence,
                        "one-sided confidence for the Sharpe stars");
        cmd->add_option("--risk-confidence", opt.risk_confidence,
                        "one-sided confidence for the risk flags");
    };
    auto* report = app.add_subcommand("report", "metric table from a backtest summary");
    add_reporting(report);
    auto* compare =
        app.add_subcommand("compare", "ranked strategy comparison with significance marks");
    add_reporting(compare);

    CLI11_PARSE(app, argc, argv);

    if (ingest->parsed()) return topofolio::cli::cmd_ingest(opt);
    if (riskc->parsed()) return topofolio::cli::cmd_risk(opt);
    if (optimize->parsed()) return topofolio::cli::cmd_optimize(opt);
    if (backtest->parsed()) return topofolio::cli::cmd_backtest(opt);
    if (report->parsed()) return topofolio::cli::cmd_report(opt);
    if (compare->parsed()) return topofolio::cli::cmd_compare(opt);
    return 1;
}
