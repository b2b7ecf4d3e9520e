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

#ifndef REVDE_EXPERIMENT_HPP
#define REVDE_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "revde/config.hpp"

namespace revde {

std::string_view version() noexcept;

/// Evaluation threads: REVDE_THREADS if set to a positive value, otherwise
/// hardware concurrency.
unsigned resolve_threads();

/// Rows of the eigenvalue table over F = step, 2 step, ... <= f_max for both
/// operators. Columns: kind,F,re1,im1,abs1,re2,im2,abs2,re3,im3,abs3,det
std::string eigen_table_csv(double f_max, double f_step);

/// Runs the configured experiment and writes its artefacts to
/// config.output_dir. A manifest.json is written in every case. Returns 0 on
/// success; on failure the message goes to `err` and the result is nonzero.
int run_experiment(const ExperimentConfig& config, std::ostream& err);

}  // namespace revde

#endif  // REVDE_EXPERIMENT_HPP
