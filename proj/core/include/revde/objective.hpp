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

#ifndef REVDE_OBJECTIVE_HPP
#define REVDE_OBJECTIVE_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "revde/types.hpp"

namespace revde {

/// Black-box objective to be minimised over a box. The evaluator must be
/// safe to call concurrently; the counter is bumped once per call.
class Objective {
public:
    using Evaluator = std::function<double(std::span<const double>)>;

    Objective(BoxBounds bounds, Evaluator evaluator, std::string name = {});

    Objective(const Objective&) = delete;
    Objective& operator=(const Objective&) = delete;

    double operator()(std::span<const double> x) const;

    std::size_t dimension() const noexcept { return bounds_.dimension(); }
    const BoxBounds& bounds() const noexcept { return bounds_; }
    const std::string& name() const noexcept { return name_; }

    std::uint64_t evaluations() const noexcept { return counter_.load(); }
    void reset_counter() noexcept { counter_.store(0); }

private:
    BoxBounds bounds_;
    Evaluator evaluator_;
    std::string name_;
    mutable std::atomic<std::uint64_t> counter_{0};
};

}  // namespace revde

#endif  // REVDE_OBJECTIVE_HPP
