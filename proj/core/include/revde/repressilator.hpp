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

#ifndef REVDE_REPRESSILATOR_HPP
#define REVDE_REPRESSILATOR_HPP

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "revde/objective.hpp"
#include "revde/ode.hpp"
#include "revde/types.hpp"

namespace revde::repressilator {

/// Kinetic parameters in search-vector order [alpha0, n, beta, alpha].
struct Params {
    double alpha0 = 1.0;  // basal transcription
    double n = 2.0;       // Hill coefficient
    double beta = 5.0;    // protein decay ratio
    double alpha = 1000.0;

    static Params from_vector(std::span<const double> x);
    std::array<double, 4> to_array() const { return {alpha0, n, beta, alpha}; }
    void validate() const;
};

/// (m1, p1, m2, p2, m3, p3)
using SystemState = ode::State<6>;

enum Species : std::size_t { kM1 = 0, kP1 = 1, kM2 = 2, kP2 = 3, kM3 = 4, kP3 = 5 };

inline constexpr SystemState kReferenceInitialState{0.0, 2.0, 0.0, 1.0, 0.0, 3.0};
inline constexpr Params kReferenceParams{1.0, 2.0, 5.0, 1000.0};

struct ObservationSet {
    Vector times;
    std::vector<std::array<double, 3>> mrna;  // rows aligned with times
    double noise_std = 0.0;

    void validate() const;
};

/// alpha / (1 + p^n), evaluated in log space. Saturates to 0 when p^n
/// overflows; p <= 0 is treated as 0.
double hill(double p, double n, double alpha) noexcept;

SystemState derivatives(const SystemState& state, const Params& params) noexcept;

/// Tolerances used everywhere unless overridden: rtol 1e-6, atol 1e-8.
ode::Options default_ode_options();

/// Trajectory sampled at `times` (integration starts at t = 0).
/// Throws ode::IntegrationError.
std::vector<SystemState> integrate(const Params& params, const SystemState& initial,
                                   std::span<const double> times,
                                   const ode::Options& options = default_ode_options());

/// `count` evenly spaced points on [0, t_end], endpoints included.
Vector uniform_times(std::size_t count, double t_end);

/// Default grid: 40 points on [0, 40].
Vector default_times();

ObservationSet generate_observations(const Params& truth, const SystemState& initial,
                                     std::span<const double> times, double noise_std, Rng& rng);

/// Mean over timepoints of the Euclidean mRNA residual. +inf when the
/// simulation fails.
double fit_objective(const Params& candidate, const ObservationSet& obs,
                     const SystemState& initial,
                     const ode::Options& options = default_ode_options());

/// Search box for [alpha0, n, beta, alpha].
BoxBounds default_bounds();

/// Evaluator over search vectors [alpha0, n, beta, alpha] for use with Objective.
Objective::Evaluator make_evaluator(ObservationSet obs, SystemState initial = kReferenceInitialState);

/// CSV `t,m1,m2,m3`.
void write_observations_csv(std::ostream& out, const ObservationSet& obs);
/// Reads `t,m1,m2,m3`; noise_std of the result is 0 (unknown).
ObservationSet read_observations_csv(std::istream& in);
ObservationSet read_observations_csv(const std::filesystem::path& path);

/// Appends rows `gen,alpha0,n,beta,alpha,objective` for every member.
void append_population_rows(std::ostream& out, const Population& pop);
inline constexpr const char* kPopulationCsvHeader = "gen,alpha0,n,beta,alpha,objective";

}  // namespace revde::repressilator

#endif  // REVDE_REPRESSILATOR_HPP
