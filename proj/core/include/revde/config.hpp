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

#ifndef REVDE_CONFIG_HPP
#define REVDE_CONFIG_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revde/benchmarks.hpp"
#include "revde/engine.hpp"

namespace revde {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Problem { Benchmark, Repressilator, Mlp, Analysis };

std::string_view to_string(Problem p) noexcept;

struct ExperimentConfig {
    Problem problem = Problem::Benchmark;
    std::vector<Method> methods;
    std::size_t population = 500;
    std::size_t generations = 150;
    double f = 0.5;
    double p = 0.9;
    std::uint64_t seed = 0;
    std::size_t repeats = 10;
    bool budget_match = true;
    std::filesystem::path output_dir = "results";

    // benchmark
    std::optional<bench::Function> benchmark;
    std::size_t dim = 0;
    bool griewank_standard = false;

    // repressilator
    double noise_std = 5.0;
    std::size_t obs_count = 40;
    double t_end = 40.0;
    std::optional<std::filesystem::path> observations;
    std::array<double, 4> truth{1.0, 2.0, 5.0, 1000.0};
    std::array<double, 4> param_lower{0.01, 0.1, 0.1, 1.0};
    std::array<double, 4> param_upper{10.0, 10.0, 20.0, 2000.0};
    /// Seed for synthetic observation noise; defaults to `seed`.
    std::optional<std::uint64_t> data_seed;

    // mlp
    std::optional<std::filesystem::path> train_images;
    std::optional<std::filesystem::path> train_labels;
    std::optional<std::filesystem::path> test_images;
    std::optional<std::filesystem::path> test_labels;
    std::size_t train_size = 2000;
    std::optional<std::uint64_t> shuffle_seed;
    double weight_bound = 1.0;

    // analysis
    double f_max = 2.0;
    double f_step = 1.0 / 64.0;

    /// Generations actually run for `m` once budget matching is applied: DE
    /// runs 3x as long when it shares the comparison with a triplet method.
    std::size_t generations_for(Method m) const noexcept;
};

/// Parses flat `key = value` text (`#` starts a comment) and then applies
/// flag overrides (`--key value`, `--key=value`, `--griewank-standard`,
/// `--no-budget-match`). Dashes in flag names map to underscores. Unknown
/// keys, malformed values and missing required fields raise ConfigError with
/// the offending line or flag named.
ExperimentConfig parse_config(std::string_view file_text, const std::vector<std::string>& flags,
                              std::string_view file_name = "<config>");

/// Reads `path` (if given) and forwards to parse_config.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& flags);

}  // namespace revde

#endif  // REVDE_CONFIG_HPP
