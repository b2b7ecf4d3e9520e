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

#include "revde/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <string>

namespace revde::mlp {

ImageDataset downsample(const ImageDataset& data) {
    if (data.rows != 28 || data.cols != 28) {
        throw ContractViolation("downsample expects 28x28 images, got " +
                                std::to_string(data.rows) + "x" + std::to_string(data.cols));
    }
    ImageDataset out;
    out.rows = 14;
    out.cols = 14;
    out.labels = data.labels;
    out.pixels.resize(data.size() * 196);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto src = data.image(i);
        double* dst = out.pixels.data() + i * 196;
        for (std::size_t r = 0; r < 14; ++r) {
            for (std::size_t c = 0; c < 14; ++c) {
                const std::size_t top = 2 * r * 28 + 2 * c;
                dst[r * 14 + c] = (src[top] + src[top + 1] + src[top + 28] + src[top + 29]) / 4.0;
            }
        }
    }
    return out;
}

Probabilities forward(std::span<const double> weights, std::span<const double> image) {
    if (weights.size() != MlpShape::total_weights) {
        throw ContractViolation("forward: expected 4120 weights, got " +
                                std::to_string(weights.size()));
    }
    if (image.size() != MlpShape::input_dim) {
        throw ContractViolation("forward: expected 196 inputs, got " + std::to_string(image.size()));
    }
    std::array<double, MlpShape::hidden_dim> hidden{};
    for (std::size_t j = 0; j < MlpShape::hidden_dim; ++j) {
        const double* row = weights.data() + j * MlpShape::input_dim;
        double acc = 0.0;
        for (std::size_t i = 0; i < MlpShape::input_dim; ++i) acc += row[i] * image[i];
        hidden[j] = std::max(acc, 0.0);
    }
    Probabilities out{};
    const double* w2 = weights.data() + MlpShape::hidden_weights;
    for (std::size_t k = 0; k < MlpShape::output_dim; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < MlpShape::hidden_dim; ++j) {
            acc += w2[k * MlpShape::hidden_dim + j] * hidden[j];
        }
        out[k] = acc;
    }
    const double top = *std::max_element(out.begin(), out.end());
    double z = 0.0;
    for (auto& v : out) {
        v = std::exp(v - top);
        z += v;
    }
    for (auto& v : out) v /= z;
    return out;
}

std::size_t predict(std::span<const double> weights, std::span<const double> image) {
    const auto p = forward(weights, image);
    // max_element returns the first maximum.
    return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

double classification_error(std::span<const double> weights, const ImageDataset& data) {
    if (data.size() == 0) throw ContractViolation("classification_error: empty dataset");
    std::size_t correct = 0;
    for (std::size_t n = 0; n < data.size(); ++n) {
        if (predict(weights, data.image(n)) == data.labels[n]) ++correct;
    }
    return 1.0 - static_cast<double>(correct) / static_cast<double>(data.size());
}

ImageDataset take_subset(const ImageDataset& data, std::size_t count,
                         std::optional<std::uint64_t> shuffle_seed) {
    count = std::min(count, data.size());
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    ImageDataset out;
    out.rows = data.rows;
    out.cols = data.cols;
    out.labels.reserve(count);
    out.pixels.reserve(count * data.pixels_per_image());
    for (std::size_t k = 0; k < count; ++k) {
        const auto img = data.image(order[k]);
        out.pixels.insert(out.pixels.end(), img.begin(), img.end());
        out.labels.push_back(data.labels[order[k]]);
    }
    return out;
}

BoxBounds weight_bounds(double limit) {
    if (!(limit > 0.0)) throw ContractViolation("weight bound must be positive");
    return BoxBounds::uniform(MlpShape::total_weights, -limit, limit);
}

Objective::Evaluator make_evaluator(ImageDataset data) {
    if (data.pixels_per_image() != MlpShape::input_dim) {
        throw ContractViolation("mlp evaluator expects 14x14 images");
    }
    auto shared = std::make_shared<const ImageDataset>(std::move(data));
    return [shared](std::span<const double> w) { return classification_error(w, *shared); };
}

}  // namespace revde::mlp
