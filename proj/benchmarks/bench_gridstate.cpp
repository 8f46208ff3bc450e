// Copyright 2026 The qest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qest/gridstate.hpp"

namespace {

void BM_GridFisher(benchmark::State& state) {
    const double delta = static_cast<double>(state.range(0)) / 100.0;
    const qest::GridParams p = qest::GridParams::for_delta(delta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qest::grid_fisher(p).qfi(0, 0));
    }
    state.counters["cutoff"] = p.cutoff;
}
BENCHMARK(BM_GridFisher)->Arg(60)->Arg(30)->Arg(15);

void BM_SweepRow(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(qest::sweep({0.3}, qest::Mat2::Identity(), 1).front().c_mi);
    }
}
BENCHMARK(BM_SweepRow);

} // namespace

BENCHMARK_MAIN();
