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

#ifndef REVDE_ODE_HPP
#define REVDE_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace revde::ode {

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    double rtol = 1e-6;
    double atol = 1e-8;
    /// 0 picks a starting step from the initial derivative.
    double initial_step = 0.0;
    std::size_t max_steps = 200000;
};

template <std::size_t N>
using State = std::array<double, N>;

/// Adaptive Dormand-Prince 5(4) (FSAL, local extrapolation) starting at t = 0.
/// The solution is sampled at `times` with the method's 4th-order continuous
/// extension over each accepted step. `rhs(const State&) -> State` is autonomous.
///
/// Throws IntegrationError when the step size underflows, the state stops
/// being finite, or max_steps is exceeded.
template <std::size_t N, class Rhs>
std::vector<State<N>> integrate_dopri5(Rhs&& rhs, const State<N>& initial,
                                       std::span<const double> times,
                                       const Options& opt = {}) {
    using S = State<N>;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
            throw std::invalid_argument("integrate_dopri5: times must be increasing and >= 0");
        }
    }
    std::vector<S> out;
    out.reserve(times.size());
    if (times.empty()) return out;

    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    // b - b*, the embedded 4th-order difference.
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    // Dense output weights.
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    auto finite = [](const S& s) {
        return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
    };
    auto axpy = [](const S& y, double h, std::initializer_list<std::pair<double, const S*>> terms) {
        S r = y;
        for (const auto& [w, k] : terms) {
            for (std::size_t i = 0; i < N; ++i) r[i] += h * w * (*k)[i];
        }
        return r;
    };

    S y = initial;
    S k1 = rhs(y);
    double t = 0.0;
    std::size_t next = 0;
    while (next < times.size() && times[next] == t) out.push_back(y), ++next;
    if (next == times.size()) return out;

    const double t_end = times.back();
    double h = opt.initial_step;
    if (h <= 0.0) {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k1[i] / sc) * (k1[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    }
    h = std::min(h, t_end - t);

    std::size_t steps = 0;
    while (next < times.size()) {
        if (++steps > opt.max_steps) {
            throw IntegrationError("integrate_dopri5: exceeded " + std::to_string(opt.max_steps) +
                                   " steps");
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            throw IntegrationError("integrate_dopri5: step size underflow at t=" +
                                   std::to_string(t));
        }
        const bool last = h >= t_end - t;
        if (last) h = t_end - t;

        const S k2 = rhs(axpy(y, h, {{a21, &k1}}));
        const S k3 = rhs(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const S k4 = rhs(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const S k5 = rhs(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const S k6 = rhs(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const S y1 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const S k7 = rhs(y1);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / N);
        if (!std::isfinite(err) || !finite(y1)) {
            h *= 0.2;
            continue;
        }

        if (err <= 1.0) {
            const double t1 = last ? t_end : t + h;
            while (next < times.size() && times[next] <= t1) {
                // Dormand-Prince continuous extension of order 4 on [t, t1].
                const double s = (times[next] - t) / h;
                const double s1 = 1.0 - s;
                S v;
                for (std::size_t i = 0; i < N; ++i) {
                    const double r2 = y1[i] - y[i];
                    const double r3 = h * k1[i] - r2;
                    const double r4 = r2 - h * k7[i] - r3;
                    const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                           d6 * k6[i] + d7 * k7[i]);
                    v[i] = y[i] + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
                }
                out.push_back(v);
                ++next;
            }
            t = t1;
            y = y1;
            k1 = k7;
        }
        const double fac = err == 0.0 ? 10.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 10.0);
        h *= err <= 1.0 ? fac : std::min(fac, 1.0);
    }
    return out;
}

}  // namespace revde::ode

#endif  // REVDE_ODE_HPP
