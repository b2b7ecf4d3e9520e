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

#ifndef REVDE_BENCHMARKS_HPP
#define REVDE_BENCHMARKS_HPP

#include <optional>
#include <span>
#include <string_view>

#include "revde/types.hpp"

namespace revde::bench {

enum class Function { Griewank, Rastrigin, Salomon, Schwefel };

std::string_view to_string(Function fn) noexcept;
std::optional<Function> parse_function(std::string_view name);

/// Griewank with the sum term as printed, sqrt(x_d^2 / 4000) = |x_d| / sqrt(4000).
/// `standard` switches to the conventional sum of x_d^2 / 4000.
double griewank(std::span<const double> x, bool standard = false);
double rastrigin(std::span<const double> x);
double salomon(std::span<const double> x);
/// 418.9829 D - sum x_d sin(sqrt|x_d|). Defined everywhere; the box lives in
/// default_bounds().
double schwefel(std::span<const double> x);

double evaluate(Function fn, std::span<const double> x, bool griewank_standard = false);

/// [-5, 5]^D for Griewank, Rastrigin and Salomon; [200, 500]^D for Schwefel.
BoxBounds default_bounds(Function fn, std::size_t dimension);

}  // namespace revde::bench

#endif  // REVDE_BENCHMARKS_HPP
