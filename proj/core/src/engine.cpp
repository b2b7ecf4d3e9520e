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

#include "revde/engine.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

#include "revde/csv.hpp"

namespace revde {

Objective::Objective(BoxBounds bounds, Evaluator evaluator, std::string name)
    : bounds_(std::move(bounds)), evaluator_(std::move(evaluator)), name_(std::move(name)) {
    bounds_.validate();
    if (!evaluator_) throw ContractViolation("objective needs an evaluator");
}

double Objective::operator()(std::span<const double> x) const {
    if (x.size() != dimension()) throw ContractViolation("objective: dimension mismatch");
    counter_.fetch_add(1);
    return evaluator_(x);
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::De: return "DE";
        case Method::Dex3: return "DEX3";
        case Method::Ade: return "ADE";
        case Method::Revde: return "REVDE";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "de") return Method::De;
    if (lower == "dex3") return Method::Dex3;
    if (lower == "ade") return Method::Ade;
    if (lower == "revde") return Method::Revde;
    return std::nullopt;
}

std::size_t offspring_per_slot(Method m) noexcept { return m == Method::De ? 1 : 3; }

void RunConfig::validate() const {
    if (population_size < kMinPopulation) {
        throw ContractViolation("population size must be at least 4");
    }
    if (generations < 1) throw ContractViolation("generations must be at least 1");
    if (!(std::isfinite(f) && f > 0.0)) throw ContractViolation("F must be positive");
    if (!(crossover_rate > 0.0 && crossover_rate <= 1.0)) {
        throw ContractViolation("crossover rate must be in (0, 1]");
    }
}

std::uint64_t RunConfig::expected_evaluations() const noexcept {
    const std::uint64_t n = population_size;
    return n + static_cast<std::uint64_t>(generations) * n * offspring_per_slot(method);
}

Population initialize_population(const BoxBounds& bounds, std::size_t n, Rng& rng) {
    bounds.validate();
    if (n < kMinPopulation) throw ContractViolation("population size must be at least 4");
    Population pop;
    pop.members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector x(bounds.dimension());
        for (std::size_t d = 0; d < x.size(); ++d) {
            std::uniform_real_distribution<double> coord(bounds.lower[d], bounds.upper[d]);
            // uniform_real_distribution may round up to the open upper end.
            x[d] = std::min(coord(rng), bounds.upper[d]);
        }
        pop.members.emplace_back(std::move(x));
    }
    return pop;
}

namespace {

// Draws `count` distinct indices in [0, n); count <= n.
template <std::size_t K>
std::array<std::size_t, K> sample_distinct(std::size_t n, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::array<std::size_t, K> idx{};
    for (std::size_t k = 0; k < K; ++k) {
        bool fresh = false;
        while (!fresh) {
            idx[k] = pick(rng);
            fresh = std::find(idx.begin(), idx.begin() + k, idx[k]) == idx.begin() + k;
        }
    }
    return idx;
}

// Two distinct indices, both different from `exclude`. Needs n >= 3.
std::array<std::size_t, 2> sample_pair_excluding(std::size_t n, std::size_t exclude, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::array<std::size_t, 2> idx{};
    do { idx[0] = pick(rng); } while (idx[0] == exclude);
    do { idx[1] = pick(rng); } while (idx[1] == exclude || idx[1] == idx[0]);
    return idx;
}

class Evaluator {
public:
    Evaluator(const Objective& objective, unsigned threads)
        : objective_(objective), threads_(std::max(1u, threads)) {}

    // Scores every candidate in place; NaN becomes +inf.
    void evaluate(std::vector<Candidate>& batch) {
        std::vector<std::uint8_t> was_nan(batch.size(), 0);
        auto score = [&](std::size_t k) {
            const double v = objective_(batch[k].values);
            was_nan[k] = std::isnan(v) ? 1 : 0;
            batch[k].objective = was_nan[k] ? std::numeric_limits<double>::infinity() : v;
        };
        const std::size_t workers = std::min<std::size_t>(threads_, batch.size());
        if (workers <= 1) {
            for (std::size_t k = 0; k < batch.size(); ++k) score(k);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t k = w; k < batch.size(); k += workers) score(k);
                });
            }
            for (auto& t : pool) t.join();
        }
        for (std::size_t k = 0; k < batch.size(); ++k) {
            nan_count_ += was_nan[k];
            if (std::isinf(*batch[k].objective) && *batch[k].objective > 0) ++inf_count_;
        }
    }

    std::uint64_t nan_count() const noexcept { return nan_count_; }
    std::uint64_t inf_count() const noexcept { return inf_count_; }

private:
    const Objective& objective_;
    unsigned threads_;
    std::uint64_t nan_count_ = 0;
    std::uint64_t inf_count_ = 0;
};

class TraceRecorder {
public:
    explicit TraceRecorder(std::vector<TraceRecord>& records) : records_(records) {}

    void record(const std::vector<Candidate>& batch) {
        for (const auto& c : batch) {
            best_ = std::min(best_, *c.objective);
            records_.push_back({++count_, best_});
        }
    }

private:
    std::vector<TraceRecord>& records_;
    std::uint64_t count_ = 0;
    double best_ = std::numeric_limits<double>::infinity();
};

// Builds all offspring for one generation. Consumes the RNG in a fixed order:
// per slot, indices first, then one crossover mask per produced candidate.
std::vector<Candidate> breed(const RunConfig& config, const Population& pop,
                             const BoxBounds& bounds, Rng& rng) {
    const std::size_t n = pop.size();
    const std::size_t D = pop.dimension();
    const ScalingFactor f(config.f);
    const double p = config.crossover_rate;
    const auto& x = pop.members;

    std::vector<Candidate> offspring;
    offspring.reserve(n * offspring_per_slot(config.method));

    auto finish = [&](const Candidate& trial, const Candidate& parent) {
        const auto mask = CrossoverMask::sample(D, p, rng);
        offspring.push_back(repair_bounds(uniform_crossover(trial, parent, mask), bounds));
    };

    std::optional<TransformMatrix> matrix;
    if (config.method == Method::Ade) matrix = build_matrix(MatrixKind::AdeM, f);
    if (config.method == Method::Revde) matrix = build_matrix(MatrixKind::RevdeR, f);

    for (std::size_t slot = 0; slot < n; ++slot) {
        switch (config.method) {
            case Method::De: {
                const auto [i, j, k] = sample_distinct<3>(n, rng);
                finish(de_mutation(x[i], x[j], x[k], f), x[i]);
                break;
            }
            case Method::Dex3: {
                std::size_t base = 0;
                std::array<std::size_t, 6> others{};
                if (n >= 7) {
                    const auto idx = sample_distinct<7>(n, rng);
                    base = idx[0];
                    std::copy(idx.begin() + 1, idx.end(), others.begin());
                } else {
                    // Too few members for seven distinct picks: each pair is
                    // distinct within itself and from the base only.
                    base = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
                    for (std::size_t t = 0; t < 3; ++t) {
                        const auto pr = sample_pair_excluding(n, base, rng);
                        others[2 * t] = pr[0];
                        others[2 * t + 1] = pr[1];
                    }
                }
                const auto ys = dex3_mutation(x[base],
                                              {{{x[others[0]], x[others[1]]},
                                                {x[others[2]], x[others[3]]},
                                                {x[others[4]], x[others[5]]}}},
                                              f);
                for (const auto& y : ys) finish(y, x[base]);
                break;
            }
            case Method::Ade:
            case Method::Revde: {
                const auto idx = sample_distinct<3>(n, rng);
                const auto ys = apply_triplet_transform(*matrix, x[idx[0]], x[idx[1]], x[idx[2]]);
                for (std::size_t t = 0; t < 3; ++t) finish(ys[t], x[idx[t]]);
                break;
            }
        }
    }
    return offspring;
}

}  // namespace

RunTrace run(const RunConfig& config, const Objective& objective,
             const GenerationObserver& observer) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    Rng rng(config.seed);
    RunTrace trace;
    trace.records.reserve(config.expected_evaluations());
    Evaluator evaluator(objective, config.threads);
    TraceRecorder recorder(trace.records);

    Population pop = initialize_population(objective.bounds(), config.population_size, rng);
    evaluator.evaluate(pop.members);
    recorder.record(pop.members);
    if (observer) observer(pop);

    for (std::size_t g = 0; g < config.generations; ++g) {
        auto offspring = breed(config, pop, objective.bounds(), rng);
        evaluator.evaluate(offspring);
        recorder.record(offspring);
        pop = select_survivors(pop, offspring, config.population_size);
        if (observer) observer(pop);
    }

    trace.final_population = std::move(pop);
    trace.nan_evaluations = evaluator.nan_count();
    trace.infinite_evaluations = evaluator.inf_count();
    trace.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return trace;
}

TraceSummary summarize(const std::vector<RunTrace>& traces) {
    TraceSummary s;
    if (traces.empty()) return s;
    const std::size_t len = traces.front().records.size();
    for (const auto& t : traces) {
        if (t.records.size() != len) throw ContractViolation("summarize: trace lengths differ");
    }
    const double r = static_cast<double>(traces.size());
    s.evaluation.resize(len);
    s.mean.resize(len);
    s.std.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        double sum = 0.0;
        for (const auto& t : traces) sum += t.records[k].best_objective;
        const double mean = sum / r;
        double ss = 0.0;
        for (const auto& t : traces) {
            const double v = t.records[k].best_objective;
            const double dv = v == mean ? 0.0 : v - mean;
            ss += dv * dv;
        }
        s.evaluation[k] = traces.front().records[k].evaluation;
        s.mean[k] = mean;
        s.std[k] = traces.size() == 1 ? 0.0 : std::sqrt(ss / r);
    }
    return s;
}

RepeatedRun run_repeated(const RunConfig& config, const Objective& objective,
                         std::size_t repeats) {
    if (repeats < 1) throw ContractViolation("repeats must be at least 1");
    RepeatedRun out;
    out.traces.reserve(repeats);
    for (std::size_t r = 0; r < repeats; ++r) {
        RunConfig cfg = config;
        cfg.seed = config.seed + r;
        out.traces.push_back(run(cfg, objective));
    }
    out.summary = summarize(out.traces);
    return out;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
    out << "evaluation,best_objective\n";
    for (const auto& rec : trace.records) {
        out << rec.evaluation << ',' << format_double(rec.best_objective) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const TraceSummary& summary) {
    out << "evaluation,mean,std\n";
    for (std::size_t k = 0; k < summary.evaluation.size(); ++k) {
        out << summary.evaluation[k] << ',' << format_double(summary.mean[k]) << ','
            << format_double(summary.std[k]) << '\n';
    }
}

}  // namespace revde
