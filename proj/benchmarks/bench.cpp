/*
   Copyright 2026 The Honeyscan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include <benchmark/benchmark.h>

#include <honeyscan/core/amount.hpp>
#include <honeyscan/core/keccak.hpp>
#include <honeyscan/mock/corpus.hpp>
#include <honeyscan/scan/scenario_scan.hpp>
#include <honeyscan/simulator.hpp>

namespace {

using honeyscan::TokenAmount;

void BM_EstimateOutput(benchmark::State& state) {
    const auto rin = TokenAmount::parse("734521e18");
    const auto rout = TokenAmount::parse("129e18");
    const auto in = TokenAmount::parse("3e18");
    for (auto _ : state) benchmark::DoNotOptimize(honeyscan::sim::estimate_output(rin, rout, in, 3, 1000));
}
BENCHMARK(BM_EstimateOutput);

void BM_AmountMulDiv(benchmark::State& state) {
    const auto a = TokenAmount::max();
    const auto b = TokenAmount::parse("987654321987654321987654321");
    const auto d = TokenAmount::parse("123456789123456789123456789123");
    for (auto _ : state) benchmark::DoNotOptimize(honeyscan::amount_mul_div(a, b, d));
}
BENCHMARK(BM_AmountMulDiv);

void BM_Keccak32(benchmark::State& state) {
    const std::string text = "Transfer(address,address,uint256)";
    for (auto _ : state) benchmark::DoNotOptimize(honeyscan::keccak256(std::string_view{text}));
}
BENCHMARK(BM_Keccak32);

void BM_ScenarioScan(benchmark::State& state) {
    const auto corpus = honeyscan::mock::generate_corpus(8, 7);
    const auto& scenario = corpus[static_cast<std::size_t>(state.range(0))].scenario;
    for (auto _ : state) benchmark::DoNotOptimize(honeyscan::scan::simulate_scenario(scenario));
    state.SetLabel(corpus[static_cast<std::size_t>(state.range(0))].file_name);
}
BENCHMARK(BM_ScenarioScan)->DenseRange(0, 7)->Unit(benchmark::kMillisecond);

void BM_CorpusScan(benchmark::State& state) {
    const auto corpus = honeyscan::mock::generate_corpus(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        for (const auto& entry : corpus) benchmark::DoNotOptimize(honeyscan::scan::simulate_scenario(entry.scenario));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorpusScan)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
