#include <benchmark/benchmark.h>

#include "ctx/catalog.hpp"
#include "ctx/hierarchy.hpp"
#include "ctx/quantum.hpp"
#include "ctx/solve.hpp"

using namespace ctx;

namespace {

std::shared_ptr<const Scenario> nkl_bell(int n) {
  std::vector<std::vector<std::string>> parts;
  for (int i = 0; i < n; ++i)
    parts.push_back({"x" + std::to_string(i), "y" + std::to_string(i)});
  return Scenario::bell(parts, {"0", "1"});
}

void BM_BuildIncidence(benchmark::State& state) {
  auto sc = nkl_bell(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(IncidenceTableau::build(sc));
}
BENCHMARK(BM_BuildIncidence)->Arg(2)->Arg(3)->Arg(4);

void BM_Rank(benchmark::State& state) {
  auto tableau = IncidenceTableau::build(nkl_bell(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(rank(*tableau));
}
BENCHMARK(BM_Rank)->Arg(2)->Arg(3)->Arg(4);

void BM_RankCabello(benchmark::State& state) {
  auto tableau = IncidenceTableau::build(catalog::cabello18_cover().scenario);
  for (auto _ : state) benchmark::DoNotOptimize(rank(*tableau));
}
BENCHMARK(BM_RankCabello);

void BM_Classify(benchmark::State& state) {
  auto model = *catalog::ghz(static_cast<int>(state.range(0))).model;
  for (auto _ : state) benchmark::DoNotOptimize(classify(model));
}
BENCHMARK(BM_Classify)->Arg(3)->Arg(4)->Arg(5);

void BM_Ncf(benchmark::State& state) {
  auto model = *catalog::bell().model;
  for (auto _ : state) benchmark::DoNotOptimize(noncontextual_fraction(model));
}
BENCHMARK(BM_Ncf);

void BM_SignedSolve(benchmark::State& state) {
  auto model = *catalog::ghz(static_cast<int>(state.range(0))).model;
  auto tableau = IncidenceTableau::build(model.scenario_ptr());
  auto v = model_vector(*tableau, model);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_signed(augment(tableau, v)));
}
BENCHMARK(BM_SignedSolve)->Arg(3)->Arg(4);

void BM_EnumerateSe(benchmark::State& state) {
  auto model = *catalog::ghz(static_cast<int>(state.range(0))).model;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_se(model));
}
BENCHMARK(BM_EnumerateSe)->Arg(4)->Arg(6);

void BM_BornGhz(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto obs = ghz_observables(n);
  auto cover = commuting_cover(obs);
  auto state_n = ghz_state(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(born_model(state_n, obs, cover));
}
BENCHMARK(BM_BornGhz)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
