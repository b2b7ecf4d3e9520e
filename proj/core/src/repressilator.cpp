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

#include "revde/repressilator.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

#include "revde/csv.hpp"

namespace revde::repressilator {

Params Params::from_vector(std::span<const double> x) {
    if (x.size() != 4) throw ContractViolation("repressilator params need 4 values");
    return Params{x[0], x[1], x[2], x[3]};
}

void Params::validate() const {
    for (double v : to_array()) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ContractViolation("repressilator params must be finite and non-negative");
        }
    }
}

void ObservationSet::validate() const {
    if (times.empty()) throw ContractViolation("observation set is empty");
    if (times.size() != mrna.size()) throw ContractViolation("observation rows misaligned");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) {
            throw ContractViolation("observation times must be strictly increasing");
        }
    }
    if (times.front() < 0.0) throw ContractViolation("observation times must be >= 0");
}

double hill(double p, double n, double alpha) noexcept {
    if (!(p > 0.0)) return n == 0.0 ? alpha / 2.0 : alpha;
    const double log_pn = n * std::log(p);
    if (log_pn > 700.0) return 0.0;
    return alpha / (1.0 + std::exp(log_pn));
}

SystemState derivatives(const SystemState& s, const Params& k) noexcept {
    SystemState r;
    r[kM1] = -s[kM1] + hill(s[kP3], k.n, k.alpha) + k.alpha0;
    r[kP1] = -k.beta * (s[kP1] - s[kM1]);
    r[kM2] = -s[kM2] + hill(s[kP1], k.n, k.alpha) + k.alpha0;
    r[kP2] = -k.beta * (s[kP2] - s[kM2]);
    r[kM3] = -s[kM3] + hill(s[kP2], k.n, k.alpha) + k.alpha0;
    r[kP3] = -k.beta * (s[kP3] - s[kM3]);
    return r;
}

ode::Options default_ode_options() { return ode::Options{}; }

std::vector<SystemState> integrate(const Params& params, const SystemState& initial,
                                   std::span<const double> times, const ode::Options& options) {
    params.validate();
    return ode::integrate_dopri5<6>([&](const SystemState& s) { return derivatives(s, params); },
                                    initial, times, options);
}

Vector uniform_times(std::size_t count, double t_end) {
    if (count == 0) return {};
    if (count == 1) return {0.0};
    Vector t(count);
    for (std::size_t k = 0; k < count; ++k) {
        t[k] = t_end * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return t;
}

Vector default_times() { return uniform_times(40, 40.0); }

ObservationSet generate_observations(const Params& truth, const SystemState& initial,
                                     std::span<const double> times, double noise_std, Rng& rng) {
    if (!(noise_std >= 0.0)) throw ContractViolation("noise_std must be non-negative");
    const auto traj = integrate(truth, initial, times);
    ObservationSet obs;
    obs.times.assign(times.begin(), times.end());
    obs.noise_std = noise_std;
    obs.mrna.reserve(traj.size());
    std::normal_distribution<double> noise(0.0, noise_std > 0.0 ? noise_std : 1.0);
    for (const auto& s : traj) {
        std::array<double, 3> row{s[kM1], s[kM2], s[kM3]};
        if (noise_std > 0.0) {
            for (auto& v : row) v += noise(rng);
        }
        obs.mrna.push_back(row);
    }
    return obs;
}

double fit_objective(const Params& candidate, const ObservationSet& obs,
                     const SystemState& initial, const ode::Options& options) {
    if (obs.times.empty()) throw ContractViolation("fit_objective: empty observation set");
    std::vector<SystemState> sim;
    try {
        sim = integrate(candidate, initial, obs.times, options);
    } catch (const ode::IntegrationError&) {
        return std::numeric_limits<double>::infinity();
    }
    double total = 0.0;
    for (std::size_t k = 0; k < sim.size(); ++k) {
        const double d1 = obs.mrna[k][0] - sim[k][kM1];
        const double d2 = obs.mrna[k][1] - sim[k][kM2];
        const double d3 = obs.mrna[k][2] - sim[k][kM3];
        total += std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
    }
    return total / static_cast<double>(sim.size());
}

BoxBounds default_bounds() {
    return BoxBounds({0.01, 0.1, 0.1, 1.0}, {10.0, 10.0, 20.0, 2000.0});
}

Objective::Evaluator make_evaluator(ObservationSet obs, SystemState initial) {
    obs.validate();
    auto shared = std::make_shared<const ObservationSet>(std::move(obs));
    return [shared, initial](std::span<const double> x) {
        return fit_objective(Params::from_vector(x), *shared, initial);
    };
}

void write_observations_csv(std::ostream& out, const ObservationSet& obs) {
    out << "t,m1,m2,m3\n";
    for (std::size_t k = 0; k < obs.times.size(); ++k) {
        out << format_double(obs.times[k]) << ',' << format_double(obs.mrna[k][0]) << ','
            << format_double(obs.mrna[k][1]) << ',' << format_double(obs.mrna[k][2]) << '\n';
    }
}

ObservationSet read_observations_csv(std::istream& in) {
    ObservationSet obs;
    std::string line;
    std::size_t lineno = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (header) {
            header = false;
            if (fields.size() != 4 || fields[0] != "t" || fields[1] != "m1" || fields[2] != "m2" ||
                fields[3] != "m3") {
                throw ContractViolation("observation CSV header must be t,m1,m2,m3");
            }
            continue;
        }
        if (fields.size() != 4) {
            throw ContractViolation("observation CSV line " + std::to_string(lineno) +
                                    ": expected 4 fields");
        }
        try {
            obs.times.push_back(std::stod(fields[0]));
            obs.mrna.push_back({std::stod(fields[1]), std::stod(fields[2]), std::stod(fields[3])});
        } catch (const std::exception&) {
            throw ContractViolation("observation CSV line " + std::to_string(lineno) +
                                    ": not a number");
        }
    }
    obs.validate();
    return obs;
}

ObservationSet read_observations_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_observations_csv(in);
}

void append_population_rows(std::ostream& out, const Population& pop) {
    for (const auto& c : pop.members) {
        out << pop.generation;
        for (double v : c.values) out << ',' << format_double(v);
        out << ',' << format_double(c.objective.value_or(std::numeric_limits<double>::quiet_NaN()))
            << '\n';
    }
}

}  // namespace revde::repressilator
