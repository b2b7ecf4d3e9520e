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

#include "revde/engine.hpp"
#include "revde/transforms.hpp"

using namespace revde;

namespace {

Candidate random_candidate(std::size_t d, Rng& rng) {
    std::uniform_real_distribution<double> u(-5, 5);
    Vector v(d);
    for (auto& x : v) x = u(rng);
    return Candidate(std::move(v));
}

void BM_TripletTransform(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const auto x1 = random_candidate(d, rng), x2 = random_candidate(d, rng), x3 = random_candidate(d, rng);
    const auto m = build_matrix(MatrixKind::RevdeR, ScalingFactor(0.5));
    for (auto _ : state) benchmark::DoNotOptimize(apply_triplet_transform(m, x1, x2, x3));
    state.SetItemsProcessed(state.iterations() * 3);
}
BENCHMARK(BM_TripletTransform)->Arg(10)->Arg(100)->Arg(4120);

void BM_Crossover(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    const auto a = random_candidate(d, rng), b = random_candidate(d, rng);
    for (auto _ : state) {
        const auto mask = CrossoverMask::sample(d, 0.9, rng);
        benchmark::DoNotOptimize(uniform_crossover(a, b, mask));
    }
}
BENCHMARK(BM_Crossover)->Arg(10)->Arg(4120);

void BM_Selection(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    Population pop;
    std::vector<Candidate> offspring;
    for (std::size_t i = 0; i < n; ++i) pop.members.emplace_back(Vector(10, 0.0), u(rng));
    for (std::size_t i = 0; i < 3 * n; ++i) offspring.emplace_back(Vector(10, 0.0), u(rng));
    for (auto _ : state) benchmark::DoNotOptimize(select_survivors(pop, offspring, n));
}
BENCHMARK(BM_Selection)->Arg(100)->Arg(500);

void BM_EigenReport(benchmark::State& state) {
    const auto m = build_matrix(MatrixKind::RevdeR, ScalingFactor(0.75));
    for (auto _ : state) benchmark::DoNotOptimize(eigen_report(m));
}
BENCHMARK(BM_EigenReport);

}  // namespace
