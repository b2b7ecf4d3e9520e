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

#ifndef REVDE_MLP_HPP
#define REVDE_MLP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "revde/idx.hpp"
#include "revde/objective.hpp"
#include "revde/types.hpp"

namespace revde::mlp {

using idx::ImageDataset;

/// 196-20-10 perceptron without bias terms: 196*20 + 20*10 = 4120 weights.
///
/// Weight layout (stable): the first 3920 entries are the hidden layer as a
/// 20 x 196 row-major matrix (row j feeds hidden unit j), followed by the
/// output layer as a 10 x 20 row-major matrix.
struct MlpShape {
    static constexpr std::size_t input_dim = 196;
    static constexpr std::size_t hidden_dim = 20;
    static constexpr std::size_t output_dim = 10;
    static constexpr std::size_t hidden_weights = input_dim * hidden_dim;
    static constexpr std::size_t output_weights = hidden_dim * output_dim;
    static constexpr std::size_t total_weights = hidden_weights + output_weights;
};
static_assert(MlpShape::total_weights == 4120);

using Probabilities = std::array<double, MlpShape::output_dim>;

/// 2x2 average pooling, 28x28 -> 14x14.
ImageDataset downsample(const ImageDataset& data);

/// softmax(W2 relu(W1 x)), softmax computed with the max logit subtracted.
Probabilities forward(std::span<const double> weights, std::span<const double> image);

/// Index of the largest softmax output; ties go to the lowest class.
std::size_t predict(std::span<const double> weights, std::span<const double> image);

/// Fraction misclassified, in [0, 1]. Throws on an empty dataset.
double classification_error(std::span<const double> weights, const ImageDataset& data);

/// First `count` records, or a seeded random subset when shuffle_seed is set.
ImageDataset take_subset(const ImageDataset& data, std::size_t count,
                         std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// [-limit, limit] on every weight.
BoxBounds weight_bounds(double limit = 1.0);

/// Training-error evaluator over flat weight vectors.
Objective::Evaluator make_evaluator(ImageDataset data);

}  // namespace revde::mlp

#endif  // REVDE_MLP_HPP
