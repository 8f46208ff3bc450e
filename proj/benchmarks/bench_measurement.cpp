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

#include "qest/measurement.hpp"
#include "qest/oracle.hpp"

namespace {

void BM_OptimalMeasurement(benchmark::State& state) {
    const auto d = static_cast<int>(state.range(0));
    const qest::PureModel m = qest::oracle::random_model(d, 11);
    for (auto _ : state) {
        auto [povm, bound] = qest::optimal_measurement_for_weight(m);
        benchmark::DoNotOptimize(povm.elements.front()(0, 0));
        benchmark::DoNotOptimize(bound.value);
    }
}
BENCHMARK(BM_OptimalMeasurement)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_ClassicalFisher(benchmark::State& state) {
    const auto d = static_cast<int>(state.range(0));
    const qest::PureModel m = qest::oracle::random_model(d, 12);
    const qest::Povm povm = qest::oracle::random_povm(d, 2 * d, 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qest::classical_fisher(povm, m).fisher(0, 0));
    }
}
BENCHMARK(BM_ClassicalFisher)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

} // namespace
