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

#include "revde/types.hpp"

#include <cmath>
#include <string>

namespace revde {

void Population::validate() const {
    if (members.size() < kMinPopulation) {
        throw ContractViolation("population needs at least " + std::to_string(kMinPopulation) +
                                " members, got " + std::to_string(members.size()));
    }
    const std::size_t d = dimension();
    if (d == 0) throw ContractViolation("population members have zero dimension");
    for (const auto& m : members) {
        if (m.dimension() != d) throw ContractViolation("population members differ in dimension");
    }
}

std::size_t Population::best_index() const {
    if (members.empty()) throw ContractViolation("best_index on empty population");
    std::size_t best = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!members[i].evaluated()) throw ContractViolation("best_index on unevaluated member");
        if (*members[i].objective < *members[best].objective) best = i;
    }
    return best;
}

ScalingFactor::ScalingFactor(double f) : f_(f) {
    if (!std::isfinite(f) || f < 0.0) {
        throw ContractViolation("scaling factor must be finite and non-negative");
    }
}

BoxBounds::BoxBounds(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
    validate();
}

BoxBounds BoxBounds::uniform(std::size_t dimension, double lo, double hi) {
    return BoxBounds(Vector(dimension, lo), Vector(dimension, hi));
}

bool BoxBounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != lower.size()) return false;
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (!(x[d] >= lower[d] && x[d] <= upper[d])) return false;
    }
    return true;
}

void BoxBounds::validate() const {
    if (lower.empty()) throw ContractViolation("bounds must have positive dimension");
    if (lower.size() != upper.size()) throw ContractViolation("bounds lower/upper size mismatch");
    for (std::size_t d = 0; d < lower.size(); ++d) {
        if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d])) {
            throw ContractViolation("invalid bounds at coordinate " + std::to_string(d));
        }
    }
}

}  // namespace revde
