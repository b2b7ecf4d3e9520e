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

#ifndef REVDE_TYPES_HPP
#define REVDE_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace revde {

using Vector = std::vector<double>;

/// Random engine used everywhere randomness is injected. Always owned by the
/// caller; library code never touches a global generator.
using Rng = std::mt19937_64;

/// Thrown when a precondition on shapes or values is violated.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point in the search space plus its cached objective value.
struct Candidate {
    Vector values;
    std::optional<double> objective;

    Candidate() = default;
    explicit Candidate(Vector v) : values(std::move(v)) {}
    Candidate(Vector v, double score) : values(std::move(v)), objective(score) {}

    std::size_t dimension() const noexcept { return values.size(); }
    bool evaluated() const noexcept { return objective.has_value(); }
};

/// Ordered multiset of candidates. Size is at least 4 and all members share
/// one dimensionality; see validate().
struct Population {
    std::vector<Candidate> members;
    std::uint64_t generation = 0;

    std::size_t size() const noexcept { return members.size(); }
    std::size_t dimension() const noexcept {
        return members.empty() ? 0 : members.front().dimension();
    }

    void validate() const;

    /// Index of the member with the lowest objective; ties go to the lower
    /// index. Requires every member to be evaluated.
    std::size_t best_index() const;
};

inline constexpr std::size_t kMinPopulation = 4;

/// Differential weight F. Zero is accepted so identity transforms can be
/// exercised; experiment configs require F > 0.
class ScalingFactor {
public:
    explicit ScalingFactor(double f);
    double value() const noexcept { return f_; }

private:
    double f_;
};

/// Per-coordinate box constraints, lower_d < upper_d.
struct BoxBounds {
    Vector lower;
    Vector upper;

    BoxBounds() = default;
    BoxBounds(Vector lo, Vector hi);

    static BoxBounds uniform(std::size_t dimension, double lo, double hi);

    std::size_t dimension() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const noexcept;
    void validate() const;
};

}  // namespace revde

#endif  // REVDE_TYPES_HPP
