// Gauss linking kernels and the pairwise sweep: reference, serial and OpenMP.

#include <benchmark/benchmark.h>

#include <map>

#include "pbclink/gauss.hpp"
#include "pbclink/linking.hpp"
#include "pbclink/synth.hpp"

using namespace pbclink;

namespace {

const Cell& melt(int beads) {
  static std::map<int, Cell> cache;
  auto it = cache.find(beads);
  if (it == cache.end()) {
    MeltSpec spec;
    spec.chain_count = 8;
    spec.beads_per_chain = beads;
    spec.edge = Vec3::Constant(40.0);
    spec.seed = 11;
    spec.min_separation = 0.05;
    it = cache.emplace(beads, generate_melt(spec)).first;
  }
  return it->second;
}

template <double (*Kernel)(const Polyline&, const Polyline&)>
void kernel(benchmark::State& state) {
  const Cell& cell = melt(static_cast<int>(state.range(0)));
  const Polyline& a = *cell.chains[0].source;
  const Polyline& b = cell.chains[1].source->translated(Vec3(0.37, 0.21, 0.13));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.segment_count() * b.segment_count()));
}

void sweep(benchmark::State& state, Execution exec) {
  const Cell& cell = melt(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_lk(cell, exec));
}

}  // namespace

BENCHMARK(kernel<gauss_linking_reference>)->Name("gauss/reference")->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(kernel<gauss_linking_serial>)->Name("gauss/serial")->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(kernel<gauss_linking>)->Name("gauss/openmp")->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, reference, Execution::reference)->Arg(250)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_CAPTURE(sweep, serial, Execution::serial)->Arg(250)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_CAPTURE(sweep, openmp, Execution::parallel)->Arg(250)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
