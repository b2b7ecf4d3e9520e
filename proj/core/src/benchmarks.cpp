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

#include "revde/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

namespace revde::bench {

std::string_view to_string(Function fn) noexcept {
    switch (fn) {
        case Function::Griewank: return "griewank";
        case Function::Rastrigin: return "rastrigin";
        case Function::Salomon: return "salomon";
        case Function::Schwefel: return "schwefel";
    }
    return "?";
}

std::optional<Function> parse_function(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto fn : {Function::Griewank, Function::Rastrigin, Function::Salomon,
                    Function::Schwefel}) {
        if (lower == to_string(fn)) return fn;
    }
    return std::nullopt;
}

double griewank(std::span<const double> x, bool standard) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        sum += standard ? x[d] * x[d] / 4000.0 : std::sqrt(x[d] * x[d] / 4000.0);
        prod *= std::cos(x[d] / std::sqrt(static_cast<double>(d + 1)));
    }
    return 1.0 + sum - prod;
}

double rastrigin(std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return sum;
}

double salomon(std::span<const double> x) {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    const double r = std::sqrt(sq);
    return 1.0 - std::cos(2.0 * std::numbers::pi * r) + 0.1 * r;
}

double schwefel(std::span<const double> x) {
    double sum = 418.9829 * static_cast<double>(x.size());
    for (double v : x) sum -= v * std::sin(std::sqrt(std::abs(v)));
    return sum;
}

double evaluate(Function fn, std::span<const double> x, bool griewank_standard) {
    switch (fn) {
        case Function::Griewank: return griewank(x, griewank_standard);
        case Function::Rastrigin: return rastrigin(x);
        case Function::Salomon: return salomon(x);
        case Function::Schwefel: return schwefel(x);
    }
    return 0.0;
}

BoxBounds default_bounds(Function fn, std::size_t dimension) {
    if (fn == Function::Schwefel) return BoxBounds::uniform(dimension, 200.0, 500.0);
    return BoxBounds::uniform(dimension, -5.0, 5.0);
}

}  // namespace revde::bench
