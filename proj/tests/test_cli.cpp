#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = TOPOFOLIO_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n;
}

// deterministic synthetic price panel
void write_panel(const fs::path& path, std::size_t rows, std::size_t assets,
                 std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> move(0.0004, 0.011);
    std::ofstream out(path);
    out << "date";
    for (std::size_t j = 0; j < assets; ++j) out << ",A" << j;
    out << "\n";
    std::vector<double> px(assets, 100.0);
    for (std::size_t t = 0; t < rows; ++t) {
        char date[32];
        std::snprintf(date, sizeof date, "%04zu-%02zu-%02zu", 2000 + t / 336,
                      (t / 28) % 12 + 1, t % 28 + 1);
        out << date;
        for (std::size_t j = 0; j < assets; ++j) {
            px[j] *= 1.0 + move(gen);
            char cell[32];
            std::snprintf(cell, sizeof cell, ",%.8f", px[j]);
            out << cell;
        }
        out << "\n";
    }
}

struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() /
              ("topofolio_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("cli: missing data file exits nonzero") {
    CHECK(run("risk --data /no/such/file.csv --out-dir /tmp/topofolio_void") != 0);
}

TEST_CASE("cli: ingest and risk produce the expected tables") {
    Workspace ws;
    const auto panel = ws.dir / "panel.csv";
    write_panel(panel, 320, 4, 11);

    CHECK(run("ingest --data " + panel.string() + " --out-dir " + ws.dir.string()) == 0);
    CHECK(line_count(ws.dir / "returns.csv") == 320); // header + 319 return rows

    CHECK(run("risk --data " + panel.string() + " --out-dir " + ws.dir.string() +
              " --grid-len 128 --rows 273") == 0);
    CHECK(line_count(ws.dir / "risk.csv") == 5); // header + 4 assets

    SUBCASE("k-max all is accepted") {
        CHECK(run("risk --data " + panel.string() + " --out-dir " + ws.dir.string() +
                  " --grid-len 128 --rows 273 --k-max all --force") == 0);
    }
    SUBCASE("overwrite needs --force") {
        CHECK(run("risk --data " + panel.string() + " --out-dir " + ws.dir.string() +
                  " --grid-len 128 --rows 273") != 0);
        CHECK(run("risk --data " + panel.string() + " --out-dir " + ws.dir.string() +
                  " --grid-len 128 --rows 273 --force") == 0);
    }
    SUBCASE("tda debug dump writes per-asset files") {
        CHECK(run("risk --data " + panel.string() + " --out-dir " + ws.dir.string() +
                  " --grid-len 128 --rows 273 --dump-tda --force") == 0);
        CHECK(fs::exists(ws.dir / "diagrams_A0.csv"));
        CHECK(fs::exists(ws.dir / "landscapes_A3.csv"));
    }
}

TEST_CASE("cli: optimize emits one weight per asset") {
    Workspace ws;
    const auto panel = ws.dir / "panel.csv";
    write_panel(panel, 300, 5, 13);
    CHECK(run("optimize --data " + panel.string() + " --out-dir " + ws.dir.string() +
              " --model gmv") == 0);
    CHECK(line_count(ws.dir / "weights.csv") == 6);
    CHECK(run("optimize --data " + panel.string() + " --out-dir " + ws.dir.string() +
              " --model bogus --force") != 0);
    SUBCASE("tda-po with a nondefault norm order") {
        CHECK(run("optimize --data " + panel.string() + " --out-dir " + ws.dir.string() +
                  " --model tda-po --p 2 --grid-len 128 --force") == 0);
        CHECK(line_count(ws.dir / "weights.csv") == 6);
    }
    SUBCASE("tda-ipo holds exactly k assets") {
        CHECK(run("optimize --data " + panel.string() + " --out-dir " + ws.dir.string() +
                  " --model tda-ipo --k 2 --grid-len 128 --force") == 0);
        std::ifstream in(ws.dir / "weights.csv");
        std::string line;
        std::getline(in, line); // header
        int held = 0;
        while (std::getline(in, line))
            if (line.substr(line.find(',') + 1) != "0") ++held;
        CHECK(held == 2);
    }
}

TEST_CASE("cli: backtest, report and compare round trip") {
    Workspace ws;
    const auto panel = ws.dir / "panel.csv";
    write_panel(panel, 320, 4, 17);
    const std::string common = " --data " + panel.string() + " --grid-len 128" +
                               " --model naive --model gmv --model sharpe";

    const auto out1 = ws.dir / "run1";
    CHECK(run("backtest" + common + " --seed 9 --out-dir " + out1.string()) == 0);
    CHECK(fs::exists(out1 / "summary.json"));
    CHECK(fs::exists(out1 / "metrics.csv"));
    CHECK(fs::exists(out1 / "wealth_naive.csv"));
    CHECK(fs::exists(out1 / "oos_returns_gmv.csv"));
    CHECK(fs::exists(out1 / "weights_sharpe.csv"));

    SUBCASE("identical config and seed reproduce outputs byte for byte") {
        const auto out2 = ws.dir / "run2";
        CHECK(run("backtest" + common + " --seed 9 --out-dir " + out2.string()) == 0);
        for (const auto& name :
             {"summary.json", "metrics.csv", "wealth_sharpe.csv", "weights_sharpe.csv",
              "oos_returns_naive.csv", "wealth_gmv.csv"})
            CHECK(slurp(out1 / name) == slurp(out2 / name));
    }
    SUBCASE("a different seed moves the random-search strategy only") {
        const auto out3 = ws.dir / "run3";
        CHECK(run("backtest" + common + " --out-dir " + out3.string() + " --seed 10") == 0);
        CHECK(slurp(out1 / "weights_sharpe.csv") != slurp(out3 / "weights_sharpe.csv"));
        CHECK(slurp(out1 / "weights_gmv.csv") == slurp(out3 / "weights_gmv.csv"));
    }
    SUBCASE("report and compare consume the summary") {
        CHECK(run("report --summary " + (out1 / "summary.json").string() + " --out-dir " +
                  (ws.dir / "rep").string()) == 0);
        CHECK(fs::exists(ws.dir / "rep" / "report.csv"));
        CHECK(fs::exists(ws.dir / "rep" / "report.json"));
        CHECK(run("compare --summary " + (out1 / "summary.json").string() + " --out-dir " +
                  (ws.dir / "cmp").string()) == 0);
        const auto compare_csv = slurp(ws.dir / "cmp" / "compare.csv");
        CHECK(compare_csv.find("naive_rank") != std::string::npos);
    }
    SUBCASE("unknown baseline errors") {
        CHECK(run("report --summary " + (out1 / "summary.json").string() + " --out-dir " +
                  (ws.dir / "rep2").string() + " --baseline nope") != 0);
    }
}

TEST_CASE("cli: index column is split out and feeds the omega threshold") {
    Workspace ws;
    const auto panel = ws.dir / "panel.csv";
    write_panel(panel, 310, 5, 29); // A4 will act as the index
    CHECK(run("backtest --data " + panel.string() + " --out-dir " + ws.dir.string() +
              " --index-asset A4 --model index --model naive --model omega"
              " --grid-len 128") == 0);
    CHECK(fs::exists(ws.dir / "wealth_index.csv"));
    CHECK(fs::exists(ws.dir / "weights_omega.csv"));

    // the summary's investable universe excludes the index column
    const auto summary = slurp(ws.dir / "summary.json");
    CHECK(summary.find("\"index_asset\": \"A4\"") != std::string::npos);
    CHECK(summary.find("\"A3\"") != std::string::npos);
    CHECK(summary.find("\"assets\": [\n    \"A0\",\n    \"A1\",\n    \"A2\",\n    \"A3\"\n  ]") !=
          std::string::npos);

    // index weights are a single asset at weight 1, so turnover is zero
    std::ifstream in(ws.dir / "weights_index.csv");
    std::string line;
    std::getline(in, line);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.find(",A4,1") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 2); // one row per window
}

TEST_CASE("cli: config file supplies options") {
    Workspace ws;
    const auto panel = ws.dir / "panel.csv";
    write_panel(panel, 300, 3, 19);
    const auto cfg = ws.dir / "run.toml";
    {
        std::ofstream out(cfg);
        out << "[risk]\n"
            << "data = \"" << panel.string() << "\"\n"
            << "out-dir = \"" << (ws.dir / "out").string() << "\"\n"
            << "grid-len = 128\n"
            << "rows = 273\n";
    }
    CHECK(run("--config " + cfg.string() + " risk") == 0);
    CHECK(fs::exists(ws.dir / "out" / "risk.csv"));

    SUBCASE("a flag of the same name overrides the config key") {
        CHECK(run("--config " + cfg.string() + " risk --out-dir " +
                  (ws.dir / "out2").string()) == 0);
        CHECK(fs::exists(ws.dir / "out2" / "risk.csv"));
    }
}

TEST_CASE("cli: significance markers wire through the z-tests") {
    Workspace ws;
    // hand-built summary: "steady" has a far higher Sharpe than the noisy
    // "naive", and "wild" is far riskier than "naive"
    std::ostringstream steady, naive, wild;
    for (int t = 0; t < 252; ++t) {
        steady << (t ? "," : "") << (0.01 + (t % 2 ? 1e-3 : -1e-3));
        naive << (t ? "," : "") << (t % 2 ? 0.02 : -0.02);
        wild << (t ? "," : "") << (t % 2 ? 0.05 : -0.05);
    }
    auto strategy = [](const std::string& name, const std::string& oos) {
        return "{\"name\":\"" + name + "\",\"model\":\"naive\",\"oos_returns\":[" + oos +
               "],\"turnover\":[],\"rebalance_days\":[],\"avg_nonzero_assets\":1.0}";
    };
    const auto summary = ws.dir / "summary.json";
    {
        std::ofstream out(summary);
        out << "{\"alpha\":0.95,\"rf\":0.0,\"seed\":0,\"tc_rate\":0.003,"
            << "\"tc_rates\":[0.003],"
            << "\"window\":{\"in_len\":252,\"out_len\":21,\"shift\":21,\"count\":12},"
            << "\"topo\":{\"sub_len\":126,\"hop\":21,\"tau\":1,\"dim\":3,\"p\":1.0,"
            << "\"k_max\":1,\"grid_len\":256},"
            << "\"assets\":[\"A\"],\"index_asset\":null,\"strategies\":["
            << strategy("steady", steady.str()) << "," << strategy("naive", naive.str())
            << "," << strategy("wild", wild.str()) << "]}";
    }
    CHECK(run("compare --summary " + summary.string() + " --out-dir " +
              (ws.dir / "cmp").string()) == 0);
    std::ifstream in(ws.dir / "cmp" / "compare.csv");
    std::string line, sr_row, stdev_row, cvar_row;
    while (std::getline(in, line)) {
        if (line.rfind("SR,", 0) == 0) sr_row = line;
        if (line.rfind("Stdev,", 0) == 0) stdev_row = line;
        if (line.rfind("CVaR,", 0) == 0) cvar_row = line;
    }
    // baseline "steady" beats both others at 90%: both get stars
    CHECK(sr_row.find("*") != std::string::npos);
    // "wild" flags as riskier than naive at 95% on Stdev and CVaR
    CHECK(stdev_row.find("!") != std::string::npos);
    CHECK(cvar_row.find("!") != std::string::npos);
}

TEST_CASE("cli: compare rejects single-strategy summaries") {
    Workspace ws;
    const auto panel = ws.dir / "panel.csv";
    write_panel(panel, 300, 3, 23);
    CHECK(run("backtest --data " + panel.string() + " --out-dir " + ws.dir.string() +
              " --model naive --grid-len 128") == 0);
    CHECK(run("compare --summary " + (ws.dir / "summary.json").string() + " --out-dir " +
              (ws.dir / "cmp").string()) != 0);
}
