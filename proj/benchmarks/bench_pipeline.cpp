#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "topofolio/optimizers.hpp"
#include "topofolio/qp_solver.hpp"
#include "topofolio/tda_core.hpp"
#include "topofolio/topo_risk.hpp"

using namespace topofolio;

namespace {

std::vector<double> random_series(std::size_t len, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 0.01);
    std::vector<double> s(len);
    for (double& x : s) x = dist(gen);
    return s;
}

void BM_rips_h0(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    tda::PointCloud cloud{m, 3, {}};
    cloud.data.resize(m * 3);
    for (double& x : cloud.data) x = coord(gen);
    const auto dist = tda::pairwise_distances(cloud);
    for (auto _ : state) {
        auto diag = tda::rips_persistence_h0(dist);
        benchmark::DoNotOptimize(diag);
    }
}
BENCHMARK(BM_rips_h0)->Arg(64)->Arg(124)->Arg(256);

void BM_build_landscape(benchmark::State& state) {
    const auto series = random_series(126, 2);
    const auto cloud = tda::takens_embed(series, {1, 3});
    const auto diag = tda::rips_persistence_h0(tda::pairwise_distances(cloud));
    const double upper = 1.05 * diag.max_death();
    const auto len = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto land = tda::build_landscape(diag, 0.0, upper / (len - 1), len, 1);
        benchmark::DoNotOptimize(land);
    }
}
BENCHMARK(BM_build_landscape)->Arg(256)->Arg(1024)->Arg(4096);

void BM_asset_topological_risk(benchmark::State& state) {
    const auto series = random_series(static_cast<std::size_t>(state.range(0)), 3);
    risk::TopoRiskConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(risk::asset_topological_risk(series, cfg));
    }
}
BENCHMARK(BM_asset_topological_risk)->Arg(252)->Arg(504);

void BM_qp_solve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<double> A(n * n), Q(n * n, 0.0);
    for (double& a : A) a = coord(gen);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) Q[i * n + j] += A[k * n + i] * A[k * n + j];
        Q[i * n + i] += 0.1;
    }
    const std::vector<double> c(n, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(opt::qp_solve(Q, c));
    }
}
BENCHMARK(BM_qp_solve)->Arg(10)->Arg(50)->Arg(100);

void BM_mcvar_lp(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(5);
    std::normal_distribution<double> ret(0.0004, 0.01);
    opt::ScenarioSet s;
    s.T = 252;
    s.n = n;
    for (std::size_t i = 0; i < n; ++i) s.assets.push_back("A" + std::to_string(i));
    s.r.resize(s.T * n);
    for (double& v : s.r) v = ret(gen);
    const auto mu = s.mean_returns();
    for (auto _ : state) {
        benchmark::DoNotOptimize(opt::solve_mcvar(s, mu, 0.95));
    }
}
BENCHMARK(BM_mcvar_lp)->Arg(10)->Arg(20)->Arg(50);

} // namespace

BENCHMARK_MAIN();
