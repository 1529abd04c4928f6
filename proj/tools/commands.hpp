#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace topofolio::cli {

/// Options shared across subcommands; each subcommand wires the subset it
/// uses. Every key can come from the command line, a config file, or a
/// TOPOFOLIO_* environment variable.
struct Options {
    std::string data_path;
    std::string out_dir = "out";
    bool force = false;

    // rolling window
    std::size_t in_len = 252;
    std::size_t out_len = 21;
    std::size_t shift = 21;

    // topological risk pipeline
    std::size_t sub_len = 126;
    std::size_t hop = 21;
    std::size_t tau = 1;
    std::size_t dim = 3;
    double p = 1.0;
    std::string k_max = "1"; // positive integer or "all"
    std::size_t grid_len = 1024;

    // strategies
    std::vector<std::string> models;
    std::size_t k = 50;
    double alpha = 0.95;
    double rf = 0.0;
    std::optional<double> omega_threshold;
    std::size_t sharpe_samples = 5000;
    std::uint64_t seed = 0;
    std::vector<double> tc_rates = {0.003};
    std::string index_asset;

    // risk subcommand slicing and debug dumps
    std::size_t start_row = 0;
    std::size_t rows = 0; // 0 = to the end
    bool dump_tda = false;

    // report / compare
    std::string summary_path;
    std::string baseline;
    double sharpe_confidence = 0.90;
    double risk_confidence = 0.95;
};

int cmd_ingest(const Options& opt);
int cmd_risk(const Options& opt);
int cmd_optimize(const Options& opt);
int cmd_backtest(const Options& opt);
int cmd_report(const Options& opt);
int cmd_compare(const Options& opt);

} // namespace topofolio::cli
