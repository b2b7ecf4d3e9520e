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

#ifndef REVDE_TRANSFORMS_HPP
#define REVDE_TRANSFORMS_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "revde/types.hpp"

namespace revde {

/// Bernoulli crossover mask; bit d == 1 takes the trial coordinate.
struct CrossoverMask {
    std::vector<std::uint8_t> bits;
    double rate = 1.0;

    static CrossoverMask sample(std::size_t dimension, double rate, Rng& rng);
    static CrossoverMask all(std::size_t dimension, bool value);
};

enum class MatrixKind { AdeM, RevdeR };

std::string_view to_string(MatrixKind kind) noexcept;

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// The 3x3 operator acting on a triplet X = [x1; x2; x3] (rows are
/// candidates), Y = M X.
struct TransformMatrix {
    Matrix3 entries{};
    MatrixKind kind = MatrixKind::AdeM;
    double f = 0.0;
};

struct EigenReport {
    std::array<std::complex<double>, 3> eigenvalues{};
    std::array<double, 3> real_parts{};
    std::array<double, 3> moduli{};
};

using Triplet = std::array<Candidate, 3>;

// Candidate generators. Outputs never carry an objective value.

Candidate de_mutation(const Candidate& base, const Candidate& a, const Candidate& b,
                      ScalingFactor f);

/// Difference vector source: contributes (first - second).
struct DifferencePair {
    const Candidate& first;
    const Candidate& second;
};

Triplet dex3_mutation(const Candidate& base, const std::array<DifferencePair, 3>& pairs,
                      ScalingFactor f);

/// Antisymmetric operator I + A, or the on-the-fly operator obtained by
/// substituting y1 into rows 2-3 and y2 into row 3.
TransformMatrix build_matrix(MatrixKind kind, ScalingFactor f);

Triplet apply_triplet_transform(const TransformMatrix& m, const Candidate& x1,
                                const Candidate& x2, const Candidate& x3);

/// Solves m X = Y for X by partial-pivot elimination on the 3x3 system,
/// applied column-wise. Throws ContractViolation if m is singular.
Triplet invert_triplet_transform(const TransformMatrix& m, const Candidate& y1,
                                 const Candidate& y2, const Candidate& y3);

Candidate uniform_crossover(const Candidate& trial, const Candidate& parent,
                            const CrossoverMask& mask);

/// Clips each coordinate into [lower_d, upper_d].
Candidate repair_bounds(const Candidate& x, const BoxBounds& bounds);

/// Deterministic (mu + lambda): keeps the n lowest objectives of
/// old ∪ offspring. Ties prefer old members, then lower index. Survivors keep
/// their relative order (old members first, then offspring).
Population select_survivors(const Population& old, const std::vector<Candidate>& offspring,
                            std::size_t n);

double determinant(const TransformMatrix& m);
double determinant(const Matrix3& m);

/// Eigenvalues from the characteristic cubic, sorted by descending real
/// part, then descending modulus, then descending imaginary part.
EigenReport eigen_report(const TransformMatrix& m);
EigenReport eigen_report(const Matrix3& m);

}  // namespace revde

#endif  // REVDE_TRANSFORMS_HPP
