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

#ifndef REVDE_TESTS_SYNTHETIC_DIGITS_HPP
#define REVDE_TESTS_SYNTHETIC_DIGITS_HPP

// Deterministic 28x28 seven-segment digits with jitter and pixel noise.
// Stands in for MNIST where the real files are not available.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>

#include "revde/idx.hpp"

namespace revde::testing {

//   a
//  f b
//   g
//  e c
//   d
inline constexpr std::array<std::uint8_t, 10> kSegments{
    0b0111111,  // 0: a b c d e f
    0b0000110,  // 1: b c
    0b1011011,  // 2: a b d e g
    0b1001111,  // 3: a b c d g
    0b1100110,  // 4: b c f g
    0b1101101,  // 5: a c d f g
    0b1111101,  // 6: a c d e f g
    0b0000111,  // 7: a b c
    0b1111111,  // 8
    0b1101111,  // 9: a b c d f g
};

inline idx::ImageDataset synthetic_digits(std::size_t count, std::uint64_t seed) {
    idx::ImageDataset data;
    data.rows = 28;
    data.cols = 28;
    data.pixels.assign(count * 784, 0.0);
    data.labels.resize(count);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> shift(-2, 2);
    std::uniform_real_distribution<double> ink(0.6, 1.0);
    std::normal_distribution<double> noise(0.0, 0.1);

    for (std::size_t n = 0; n < count; ++n) {
        const auto label = static_cast<std::uint8_t>(n % 10);
        data.labels[n] = label;
        double* img = data.pixels.data() + n * 784;
        const int dx = shift(rng);
        const int dy = shift(rng);
        const double v = ink(rng);
        auto fill = [&](int r0, int c0, int r1, int c1) {
            for (int r = r0; r <= r1; ++r) {
                for (int c = c0; c <= c1; ++c) {
                    const int rr = r + dy;
                    const int cc = c + dx;
                    if (rr >= 0 && rr < 28 && cc >= 0 && cc < 28) img[rr * 28 + cc] = v;
                }
            }
        };
        const auto seg = kSegments[label];
        if (seg & 0b0000001) fill(4, 9, 6, 18);     // a
        if (seg & 0b0000010) fill(4, 17, 14, 19);   // b
        if (seg & 0b0000100) fill(13, 17, 23, 19);  // c
        if (seg & 0b0001000) fill(21, 9, 23, 18);   // d
        if (seg & 0b0010000) fill(13, 8, 23, 10);   // e
        if (seg & 0b0100000) fill(4, 8, 14, 10);    // f
        if (seg & 0b1000000) fill(12, 9, 14, 18);   // g
        for (std::size_t k = 0; k < 784; ++k) img[k] = std::clamp(img[k] + noise(rng), 0.0, 1.0);
    }
    return data;
}

}  // namespace revde::testing

#endif  // REVDE_TESTS_SYNTHETIC_DIGITS_HPP
