// Serial reference vs OpenMP kernels: Monte Carlo campaigns and whole-message encoding.

#include <benchmark/benchmark.h>

#include "ctorsim/censor.hpp"
#include "ctorsim/codec.hpp"
#include "ctorsim/rng.hpp"

using namespace ctorsim;

namespace {

censor::CensorScenario scenario() {
  return {censor::BridgePool::make(25, 12), VariantConfig::ctor(10, 4)};
}

censor::CampaignOptions options(std::int64_t trials) {
  censor::CampaignOptions o;
  o.trials = static_cast<std::size_t>(trials);
  o.seed = 1;
  return o;
}

void BM_CampaignSerial(benchmark::State& state) {
  const auto sc = scenario();
  const auto opts = options(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(censor::run_campaign_serial(sc, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CampaignParallel(benchmark::State& state) {
  const auto sc = scenario();
  const auto opts = options(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(censor::run_campaign(sc, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<codec::Generation> message_generations(std::size_t bytes, std::size_t k) {
  Rng rng(9);
  std::vector<std::uint8_t> m(bytes);
  for (auto& b : m) b = static_cast<std::uint8_t>(rng.next());
  return codec::split_message(m, k);
}

void BM_EncodeSerial(benchmark::State& state) {
  const auto gens = message_generations(static_cast<std::size_t>(state.range(0)), 6);
  const auto g = codec::build_generator(codec::CodeParams::make(6, 4));
  for (auto _ : state) benchmark::DoNotOptimize(codec::encode_generations_serial(gens, g));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}

void BM_EncodeParallel(benchmark::State& state) {
  const auto gens = message_generations(static_cast<std::size_t>(state.range(0)), 6);
  const auto g = codec::build_generator(codec::CodeParams::make(6, 4));
  for (auto _ : state) benchmark::DoNotOptimize(codec::encode_generations(gens, g));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CampaignSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignParallel)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EncodeSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EncodeParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
