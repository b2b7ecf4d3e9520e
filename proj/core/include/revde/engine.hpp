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

#ifndef REVDE_ENGINE_HPP
#define REVDE_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "revde/objective.hpp"
#include "revde/transforms.hpp"
#include "revde/types.hpp"

namespace revde {

enum class Method { De, Dex3, Ade, Revde };

inline constexpr std::array<Method, 4> kAllMethods{Method::De, Method::Dex3, Method::Ade,
                                                   Method::Revde};

std::string_view to_string(Method m) noexcept;
/// Case-insensitive; accepts "de", "dex3", "ade", "revde".
std::optional<Method> parse_method(std::string_view name);

/// Offspring generated per population slot: 1 for DE, 3 for the others.
std::size_t offspring_per_slot(Method m) noexcept;

struct RunConfig {
    Method method = Method::Revde;
    std::size_t population_size = 500;
    double f = 0.5;
    double crossover_rate = 0.9;
    std::size_t generations = 150;
    std::uint64_t seed = 0;
    /// Evaluation worker threads; 0 or 1 runs inline.
    unsigned threads = 1;

    void validate() const;

    /// N + G * N for DE, N + G * 3N otherwise.
    std::uint64_t expected_evaluations() const noexcept;
};

struct TraceRecord {
    std::uint64_t evaluation = 0;  // 1-based
    double best_objective = 0.0;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct RunTrace {
    std::vector<TraceRecord> records;
    Population final_population;
    double wall_time_seconds = 0.0;
    /// Evaluations that returned NaN and were scored as +infinity.
    std::uint64_t nan_evaluations = 0;
    /// Evaluations scored +infinity, NaN ones included (e.g. failed simulations).
    std::uint64_t infinite_evaluations = 0;
};

struct TraceSummary {
    std::vector<std::uint64_t> evaluation;
    std::vector<double> mean;
    std::vector<double> std;  // population standard deviation across repeats
};

struct RepeatedRun {
    std::vector<RunTrace> traces;
    TraceSummary summary;
};

/// Called with gen-0 population after initial evaluation and after every
/// selection step.
using GenerationObserver = std::function<void(const Population&)>;

Population initialize_population(const BoxBounds& bounds, std::size_t n, Rng& rng);

RunTrace run(const RunConfig& config, const Objective& objective,
             const GenerationObserver& observer = {});

/// Repeat r runs with seed config.seed + r.
RepeatedRun run_repeated(const RunConfig& config, const Objective& objective,
                         std::size_t repeats);

/// Aligns traces on evaluation index; all traces must share the same length.
TraceSummary summarize(const std::vector<RunTrace>& traces);

/// `evaluation,best_objective`
void write_trace_csv(std::ostream& out, const RunTrace& trace);
/// `evaluation,mean,std`
void write_summary_csv(std::ostream& out, const TraceSummary& summary);

}  // namespace revde

#endif  // REVDE_ENGINE_HPP
