#include <benchmark/benchmark.h>

#include <random>
#include <unordered_map>
#include <vector>

#include "gridtriage/scenario.hpp"

using namespace gridtriage;

namespace {

struct RandomNet {
  std::vector<Bus> buses;
  std::vector<Line> lines;
};

RandomNet make_random_net(int n_lines) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> load(0.0, 500.0);
  RandomNet net;
  net.buses.push_back(Bus{1, 0.0, 1.0, 0.0});
  for (int i = 0; i < n_lines; ++i) {
    const BusId bus = i + 2;
    const BusId from =
        (i == 0) ? 1 : static_cast<BusId>(2 + (rng() % static_cast<unsigned>(i)));
    net.buses.push_back(Bus{bus, load(rng), 0.8, 3200.0});
    Line l;
    l.id = i + 2;
    l.from_bus = from;
    l.to_bus = bus;
    l.feeder_id = "f";
    l.poles_by_class = {{1, 1}};
    net.lines.push_back(std::move(l));
  }
  return net;
}

const Dataset& bundled() {
  static const Dataset ds =
      load_dataset(std::filesystem::path(GRIDTRIAGE_DATA_DIR) /
                   "33bus-3feeders.json");
  return ds;
}

void BM_BuildNetwork(benchmark::State& state) {
  const RandomNet net = make_random_net(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Network built = build_network(net.buses, net.lines, 1);
    benchmark::DoNotOptimize(built);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildNetwork)->RangeMultiplier(4)->Range(32, 8192)->Complexity();

void BM_SubtreeSums(benchmark::State& state) {
  const RandomNet raw = make_random_net(static_cast<int>(state.range(0)));
  const Network net = build_network(raw.buses, raw.lines, 1);
  std::unordered_map<LineId, double> values;
  std::mt19937 rng(7);
  for (const Line& l : net.lines()) {
    values[l.id] = static_cast<double>(rng() % 100000);
  }
  for (auto _ : state) {
    auto sums = net.subtree_sums(values);
    benchmark::DoNotOptimize(sums);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SubtreeSums)->RangeMultiplier(4)->Range(32, 8192)->Complexity();

void BM_DownstreamAllLines(benchmark::State& state) {
  const RandomNet raw = make_random_net(static_cast<int>(state.range(0)));
  const Network net = build_network(raw.buses, raw.lines, 1);
  for (auto _ : state) {
    std::size_t total = 0;
    for (const Line& l : net.lines()) {
      total += net.downstream_lines(l.id).size();
    }
    benchmark::DoNotOptimize(total);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DownstreamAllLines)->RangeMultiplier(4)->Range(32, 2048)->Complexity();

void BM_RunAssessmentEstimated(benchmark::State& state) {
  ScenarioConfig config;
  config.v_real = 80.0;
  for (auto _ : state) {
    Assessment a = run_assessment(bundled(), config);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_RunAssessmentEstimated);

void BM_RunAssessmentObserved(benchmark::State& state) {
  ScenarioConfig config;
  config.v_real = 80.0;
  config.use_observed = true;
  for (auto _ : state) {
    Assessment a = run_assessment(bundled(), config);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_RunAssessmentObserved);

void BM_WindSweep(benchmark::State& state) {
  for (auto _ : state) {
    auto rows = wind_sweep(bundled(), 0.0, 130.0, 5.0);
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_WindSweep);

}  // namespace

BENCHMARK_MAIN();
