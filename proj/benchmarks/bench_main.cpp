#include <benchmark/benchmark.h>

#include "panelid/dgp.hpp"
#include "panelid/robust.hpp"
#include "panelid/statistics.hpp"

namespace {

using namespace panelid;

DgpConfig make_config(int n, int t) {
  DgpConfig c;
  c.theta0 = 0.9;
  c.sigma_c_sq = 1.0;
  c.sigma_sq.assign(t - 1, 1.0);
  c.n_individuals = n;
  c.n_periods = t;
  return c;
}

void GeneratePanel(benchmark::State& state) {
  const DgpConfig config =
      make_config(static_cast<int>(state.range(0)), 5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_panel(config, seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(GeneratePanel)->Arg(250)->Arg(2000);

void EvaluateSys(benchmark::State& state) {
  const PanelData panel =
      generate_panel(make_config(static_cast<int>(state.range(0)), 5), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(MomentSet::Sys, panel, 0.5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(EvaluateSys)->Arg(250)->Arg(2000);

void KlmSys(benchmark::State& state) {
  const PanelData panel =
      generate_panel(make_config(static_cast<int>(state.range(0)), 5), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(klm(MomentSet::Sys, panel, 0.5, 0.05));
  }
}
BENCHMARK(KlmSys)->Arg(250)->Arg(2000);

void RobustArSys(benchmark::State& state) {
  const PanelData panel =
      generate_panel(make_config(static_cast<int>(state.range(0)), 5), 3);
  const RobustQuad quad = robust_quad(MomentSet::Sys, 5, panel);
  for (auto _ : state) {
    benchmark::DoNotOptimize(robust_gmm_ar(quad, 0.99, 0.05));
  }
}
BENCHMARK(RobustArSys)->Arg(250)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
