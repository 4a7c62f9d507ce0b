#include "qchar/compact_store.hpp"
#include "qchar/engine.hpp"
#include "qchar/io.hpp"
#include "qchar/restriction.hpp"

#include <benchmark/benchmark.h>

using namespace qchar;

namespace {

std::shared_ptr<const DynkinData> D(const char* t) { return std::make_shared<const DynkinData>(DynkinData::parse(t)); }

void BM_Fundamental(benchmark::State& state, const char* type, int node) {
  auto d = D(type);
  std::size_t n = 0;
  for (auto _ : state) {
    auto q = compute_l_fundamental(d, node);
    n = q.size();
    benchmark::DoNotOptimize(n);
  }
  state.counters["monomials"] = static_cast<double>(n);
  state.counters["monomials/s"] = benchmark::Counter(static_cast<double>(n), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_FundamentalThreads(benchmark::State& state) {
  auto d = D("E8");
  EngineOptions o;
  o.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_l_fundamental(d, 7, o).size());
}

void BM_CompactStore(benchmark::State& state) {
  auto d = D("E8");
  Monomial anchor = Monomial::y(2, 0);
  for (auto _ : state) {
    CompactStore store(d, anchor);
    run_engine(*d, anchor, {}, store);
    state.counters["bytes/monomial"] = static_cast<double>(store.memory_bytes()) / static_cast<double>(store.size());
  }
}

void BM_Serialize(benchmark::State& state) {
  auto q = compute_l_fundamental(D("E8"), 2);
  bool tree = state.range(0) != 0;
  std::size_t bytes = 0;
  for (auto _ : state) {
    auto b = serialize(q, tree);
    bytes = b.size();
    benchmark::DoNotOptimize(b.data());
  }
  state.counters["bytes"] = static_cast<double>(bytes);
}

void BM_Deserialize(benchmark::State& state) {
  auto b = serialize(compute_l_fundamental(D("E8"), 2));
  for (auto _ : state) benchmark::DoNotOptimize(deserialize(b).size());
}

void BM_Restrict(benchmark::State& state) {
  auto q = compute_l_fundamental(D("E8"), 2);
  for (auto _ : state) {
    auto ch = restrict_qchar(q);
    benchmark::DoNotOptimize(decompose(q.data(), ch).rows.size());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Fundamental, E6_node3, "E6", 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Fundamental, E8_node7, "E8", 7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Fundamental, E8_node2, "E8", 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FundamentalThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompactStore)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serialize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Deserialize)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Restrict)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
