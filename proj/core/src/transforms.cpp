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

#include "revde/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace revde {
namespace {

void require_same_dimension(const Candidate& a, const Candidate& b, const char* what) {
    if (a.dimension() != b.dimension()) {
        throw ContractViolation(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dimension()) + " vs " +
                                std::to_string(b.dimension()) + ")");
    }
}

// base + f * (a - b)
Vector perturb(const Vector& base, const Vector& a, const Vector& b, double f) {
    Vector y(base.size());
    for (std::size_t d = 0; d < base.size(); ++d) y[d] = base[d] + f * (a[d] - b[d]);
    return y;
}

using Complex = std::complex<double>;

// Roots of t^3 + b t^2 + c t + d with real coefficients. Exactly one real
// root is computed in closed form; the remaining quadratic factor comes from
// Vieta's relations so a conjugate pair stays an exact conjugate pair.
std::array<Complex, 3> cubic_roots(double b, double c, double d) {
    auto poly = [&](double t) { return ((t + b) * t + c) * t + d; };
    auto dpoly = [&](double t) { return (3.0 * t + 2.0 * b) * t + c; };
    auto polish = [&](double t) {
        for (int it = 0; it < 8; ++it) {
            const double fp = dpoly(t);
            if (fp == 0.0) break;
            const double next = t - poly(t) / fp;
            if (!(std::abs(poly(next)) < std::abs(poly(t)))) break;
            t = next;
        }
        return t;
    };

    // Depressed cubic s^3 + p s + q, t = s - b/3.
    const double shift = b / 3.0;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double disc = -(4.0 * p * p * p + 27.0 * q * q);

    if (disc > 0.0 && p < 0.0) {
        // Three distinct real roots: trigonometric form.
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        std::array<Complex, 3> out;
        for (int k = 0; k < 3; ++k) {
            const double s = r * std::cos(phi - 2.0 * M_PI * k / 3.0);
            out[k] = Complex(polish(s - shift), 0.0);
        }
        return out;
    }

    const double h = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    const double s0 = std::cbrt(-q / 2.0 + h) + std::cbrt(-q / 2.0 - h);
    const double real_root = polish(s0 - shift);

    // Remaining roots have sum -b - r and product -d / r (or c - r*sum).
    const double sum = -b - real_root;
    const double prod = c - real_root * sum;
    const double half = sum / 2.0;
    const double rad = half * half - prod;
    std::array<Complex, 3> out;
    out[0] = Complex(real_root, 0.0);
    if (rad >= 0.0) {
        const double sq = std::sqrt(rad);
        // Avoid cancellation in the smaller-magnitude root.
        const double big = half >= 0.0 ? half + sq : half - sq;
        const double small = big != 0.0 ? prod / big : 0.0;
        out[1] = Complex(polish(big), 0.0);
        out[2] = Complex(polish(small), 0.0);
    } else {
        const double im = std::sqrt(-rad);
        out[1] = Complex(half, im);
        out[2] = Complex(half, -im);
    }
    return out;
}

}  // namespace

CrossoverMask CrossoverMask::sample(std::size_t dimension, double rate, Rng& rng) {
    if (!(rate > 0.0 && rate <= 1.0)) throw ContractViolation("crossover rate must be in (0, 1]");
    CrossoverMask mask;
    mask.rate = rate;
    mask.bits.resize(dimension);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& bit : mask.bits) bit = unit(rng) < rate ? 1 : 0;
    return mask;
}

CrossoverMask CrossoverMask::all(std::size_t dimension, bool value) {
    CrossoverMask mask;
    mask.rate = value ? 1.0 : 0.0;
    mask.bits.assign(dimension, value ? 1 : 0);
    return mask;
}

std::string_view to_string(MatrixKind kind) noexcept {
    return kind == MatrixKind::AdeM ? "ADE" : "REVDE";
}

Candidate de_mutation(const Candidate& base, const Candidate& a, const Candidate& b,
                      ScalingFactor f) {
    require_same_dimension(base, a, "de_mutation");
    require_same_dimension(base, b, "de_mutation");
    return Candidate(perturb(base.values, a.values, b.values, f.value()));
}

Triplet dex3_mutation(const Candidate& base, const std::array<DifferencePair, 3>& pairs,
                      ScalingFactor f) {
    Triplet out;
    for (std::size_t t = 0; t < 3; ++t) {
        require_same_dimension(base, pairs[t].first, "dex3_mutation");
        require_same_dimension(base, pairs[t].second, "dex3_mutation");
        out[t] = Candidate(perturb(base.values, pairs[t].first.values, pairs[t].second.values,
                                   f.value()));
    }
    return out;
}

TransformMatrix build_matrix(MatrixKind kind, ScalingFactor f) {
    const double F = f.value();
    TransformMatrix m;
    m.kind = kind;
    m.f = F;
    if (kind == MatrixKind::AdeM) {
        m.entries = {{{1.0, F, -F}, {-F, 1.0, F}, {F, -F, 1.0}}};
    } else {
        const double F2 = F * F;
        const double F3 = F2 * F;
        m.entries = {{{1.0, F, -F},
                      {-F, 1.0 - F2, F + F2},
                      {F + F2, -F + F2 + F3, 1.0 - 2.0 * F2 - F3}}};
    }
    return m;
}

Triplet apply_triplet_transform(const TransformMatrix& m, const Candidate& x1,
                                const Candidate& x2, const Candidate& x3) {
    require_same_dimension(x1, x2, "apply_triplet_transform");
    require_same_dimension(x1, x3, "apply_triplet_transform");
    const std::size_t D = x1.dimension();
    const auto& e = m.entries;
    Triplet out;
    for (std::size_t r = 0; r < 3; ++r) {
        Vector y(D);
        for (std::size_t d = 0; d < D; ++d) {
            y[d] = e[r][0] * x1.values[d] + e[r][1] * x2.values[d] + e[r][2] * x3.values[d];
        }
        out[r] = Candidate(std::move(y));
    }
    return out;
}

Triplet invert_triplet_transform(const TransformMatrix& m, const Candidate& y1,
                                 const Candidate& y2, const Candidate& y3) {
    require_same_dimension(y1, y2, "invert_triplet_transform");
    require_same_dimension(y1, y3, "invert_triplet_transform");
    const std::size_t D = y1.dimension();

    // LU with partial pivoting on the 3x3, then per-column substitution.
    Matrix3 a = m.entries;
    std::array<std::size_t, 3> perm{0, 1, 2};
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < 3; ++r) {
            if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
        }
        if (a[piv][k] == 0.0) throw ContractViolation("transform matrix is singular");
        std::swap(a[k], a[piv]);
        std::swap(perm[k], perm[piv]);
        for (std::size_t r = k + 1; r < 3; ++r) {
            a[r][k] /= a[k][k];
            for (std::size_t c = k + 1; c < 3; ++c) a[r][c] -= a[r][k] * a[k][c];
        }
    }

    const std::array<const Vector*, 3> ys{&y1.values, &y2.values, &y3.values};
    std::array<Vector, 3> xs{Vector(D), Vector(D), Vector(D)};
    for (std::size_t d = 0; d < D; ++d) {
        std::array<double, 3> v{(*ys[perm[0]])[d], (*ys[perm[1]])[d], (*ys[perm[2]])[d]};
        for (std::size_t r = 1; r < 3; ++r) {
            for (std::size_t c = 0; c < r; ++c) v[r] -= a[r][c] * v[c];
        }
        for (std::size_t r = 3; r-- > 0;) {
            for (std::size_t c = r + 1; c < 3; ++c) v[r] -= a[r][c] * v[c];
            v[r] /= a[r][r];
        }
        for (std::size_t r = 0; r < 3; ++r) xs[r][d] = v[r];
    }
    return {Candidate(std::move(xs[0])), Candidate(std::move(xs[1])), Candidate(std::move(xs[2]))};
}

Candidate uniform_crossover(const Candidate& trial, const Candidate& parent,
                            const CrossoverMask& mask) {
    require_same_dimension(trial, parent, "uniform_crossover");
    if (mask.bits.size() != trial.dimension()) {
        throw ContractViolation("uniform_crossover: mask length mismatch");
    }
    Vector v(trial.dimension());
    for (std::size_t d = 0; d < v.size(); ++d) {
        v[d] = mask.bits[d] ? trial.values[d] : parent.values[d];
    }
    return Candidate(std::move(v));
}

Candidate repair_bounds(const Candidate& x, const BoxBounds& bounds) {
    if (x.dimension() != bounds.dimension()) {
        throw ContractViolation("repair_bounds: dimension mismatch");
    }
    Candidate out = x;
    bool changed = false;
    for (std::size_t d = 0; d < out.values.size(); ++d) {
        const double clipped = std::clamp(out.values[d], bounds.lower[d], bounds.upper[d]);
        if (clipped != out.values[d]) {
            out.values[d] = clipped;
            changed = true;
        }
    }
    if (changed) out.objective.reset();
    return out;
}

Population select_survivors(const Population& old, const std::vector<Candidate>& offspring,
                            std::size_t n) {
    const std::size_t total = old.size() + offspring.size();
    if (n > total) throw ContractViolation("select_survivors: n exceeds candidate pool");

    auto at = [&](std::size_t k) -> const Candidate& {
        return k < old.size() ? old.members[k] : offspring[k - old.size()];
    };
    for (std::size_t k = 0; k < total; ++k) {
        if (!at(k).evaluated()) throw ContractViolation("select_survivors: unevaluated candidate");
    }

    // Pool order is old members then offspring, so a stable sort realises the
    // tie rule.
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return *at(a).objective < *at(b).objective;
    });
    order.resize(n);
    std::sort(order.begin(), order.end());

    Population next;
    next.generation = old.generation + 1;
    next.members.reserve(n);
    for (std::size_t k : order) next.members.push_back(at(k));
    return next;
}

double determinant(const Matrix3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double determinant(const TransformMatrix& m) { return determinant(m.entries); }

EigenReport eigen_report(const Matrix3& m) {
    const double trace = m[0][0] + m[1][1] + m[2][2];
    const double minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) +
                          (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                          (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    // det(lambda I - m) = lambda^3 - tr lambda^2 + minors lambda - det
    auto roots = cubic_roots(-trace, minors, -determinant(m));

    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        return a.imag() > b.imag();
    });

    EigenReport report;
    for (std::size_t k = 0; k < 3; ++k) {
        report.eigenvalues[k] = roots[k];
        report.real_parts[k] = roots[k].real();
        report.moduli[k] = std::abs(roots[k]);
    }
    return report;
}

EigenReport eigen_report(const TransformMatrix& m) { return eigen_report(m.entries); }

}  // namespace revde
