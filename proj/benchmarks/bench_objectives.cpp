/*
 * Copyright 2026 The revde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "revde/benchmarks.hpp"
#include "revde/mlp.hpp"
#include "revde/repressilator.hpp"

using namespace revde;

namespace {

void BM_Rastrigin(benchmark::State& state) {
    const Vector x(static_cast<std::size_t>(state.range(0)), 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(bench::rastrigin(x));
}
BENCHMARK(BM_Rastrigin)->Arg(10)->Arg(100);

void BM_RepressilatorObjective(benchmark::State& state) {
    using namespace repressilator;
    Rng rng(1);
    const auto obs = generate_observations(kReferenceParams, kReferenceInitialState, default_times(), 5.0, rng);
    const Params candidate{0.8, 2.2, 4.0, 1200.0};
    for (auto _ : state) benchmark::DoNotOptimize(fit_objective(candidate, obs, kReferenceInitialState));
}
BENCHMARK(BM_RepressilatorObjective);

void BM_MlpForward(benchmark::State& state) {
    Rng rng(4);
    std::uniform_real_distribution<double> u(-1, 1), px(0, 1);
    Vector w(mlp::MlpShape::total_weights);
    for (auto& v : w) v = u(rng);
    std::vector<double> image(mlp::MlpShape::input_dim);
    for (auto& v : image) v = px(rng);
    for (auto _ : state) benchmark::DoNotOptimize(mlp::forward(w, image));
}
BENCHMARK(BM_MlpForward);

}  // namespace
