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

#include "qest/bound.hpp"
#include "qest/oracle.hpp"
#include "qest/rng.hpp"

namespace {

void BM_CmiQuartic(benchmark::State& state) {
    qest::SplitMix64 rng(7);
    for (auto _ : state) {
        const double s1 = 10.0 * rng.uniform() + 0.01;
        const double s2 = 10.0 * rng.uniform() + 0.01;
        const double beta = 0.999 * rng.uniform();
        benchmark::DoNotOptimize(qest::cmi(s1, s2, beta).value);
    }
}
BENCHMARK(BM_CmiQuartic);

void BM_CmiGridOracle(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qest::oracle::grid_min_cmi(2.0, 1.0, 0.8, n).first);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CmiGridOracle)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_CmiForModel(benchmark::State& state) {
    const auto d = static_cast<int>(state.range(0));
    const qest::PureModel m = qest::oracle::random_model(d, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qest::cmi_for_model(m).value);
    }
}
BENCHMARK(BM_CmiForModel)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

} // namespace
