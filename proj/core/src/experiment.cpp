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

#include "revde/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "revde/csv.hpp"
#include "revde/engine.hpp"
#include "revde/idx.hpp"
#include "revde/mlp.hpp"
#include "revde/repressilator.hpp"
#include "revde/transforms.hpp"

#ifndef REVDE_VERSION_STRING
#define REVDE_VERSION_STRING "0.0.0"
#endif

namespace revde {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

json config_json(const ExperimentConfig& c) {
    json j;
    j["problem"] = to_string(c.problem);
    j["methods"] = json::array();
    for (auto m : c.methods) j["methods"].push_back(to_string(m));
    j["population"] = c.population;
    j["generations"] = c.generations;
    j["f"] = c.f;
    j["p"] = c.p;
    j["seed"] = c.seed;
    j["repeats"] = c.repeats;
    j["budget_match"] = c.budget_match;
    j["output_dir"] = c.output_dir.string();
    switch (c.problem) {
        case Problem::Benchmark:
            j["benchmark"] = c.benchmark ? std::string(bench::to_string(*c.benchmark)) : "";
            j["dim"] = c.dim;
            j["griewank_standard"] = c.griewank_standard;
            break;
        case Problem::Repressilator:
            j["noise_std"] = c.noise_std;
            j["obs_count"] = c.obs_count;
            j["t_end"] = c.t_end;
            j["observations"] = c.observations ? c.observations->string() : "";
            j["truth"] = c.truth;
            j["param_lower"] = c.param_lower;
            j["param_upper"] = c.param_upper;
            j["data_seed"] = c.data_seed.value_or(c.seed);
            break;
        case Problem::Mlp:
            j["train_images"] = c.train_images ? c.train_images->string() : "";
            j["train_labels"] = c.train_labels ? c.train_labels->string() : "";
            j["test_images"] = c.test_images ? c.test_images->string() : "";
            j["test_labels"] = c.test_labels ? c.test_labels->string() : "";
            j["train_size"] = c.train_size;
            if (c.shuffle_seed) j["shuffle_seed"] = *c.shuffle_seed;
            j["weight_bound"] = c.weight_bound;
            break;
        case Problem::Analysis:
            j["f_max"] = c.f_max;
            j["f_step"] = c.f_step;
            break;
    }
    return j;
}

// Collects per-method traces into the two multi-run CSVs.
class TraceFiles {
public:
    void add(Method m, std::size_t repeat, const RunTrace& t) {
        auto& out = traces_[m];
        if (out.tellp() == 0) out << "repeat,evaluation,best_objective\n";
        for (const auto& rec : t.records) {
            out << repeat << ',' << rec.evaluation << ',' << format_double(rec.best_objective)
                << '\n';
        }
    }

    void add_summary(Method m, const TraceSummary& s) {
        for (std::size_t k = 0; k < s.evaluation.size(); ++k) {
            summary_ << to_string(m) << ',' << s.evaluation[k] << ',' << format_double(s.mean[k])
                     << ',' << format_double(s.std[k]) << '\n';
        }
    }

    void write(const fs::path& dir, json& files) {
        for (auto& [m, text] : traces_) {
            const auto name = "trace_" + lower(to_string(m)) + ".csv";
            atomic_write_file(dir / name, text.str());
            files.push_back(name);
        }
        atomic_write_file(dir / "summary.csv", "method,evaluation,mean,std\n" + summary_.str());
        files.push_back("summary.csv");
    }

private:
    std::map<Method, std::ostringstream> traces_;
    std::ostringstream summary_;
};

json run_json(Method m, std::size_t repeat, const RunConfig& rc, const RunTrace& t) {
    json r;
    r["method"] = to_string(m);
    r["repeat"] = repeat;
    r["seed"] = rc.seed;
    r["generations"] = rc.generations;
    r["evaluations"] = t.records.size();
    r["expected_evaluations"] = rc.expected_evaluations();
    r["best_objective"] = t.records.empty() ? json(nullptr) : json(t.records.back().best_objective);
    r["nan_evaluations"] = t.nan_evaluations;
    r["non_finite_evaluations"] = t.infinite_evaluations;
    r["wall_time_seconds"] = t.wall_time_seconds;
    return r;
}

// Runs every method x repeat; `per_run` may add problem-specific fields and
// `observer_for` may attach a generation observer (or return an empty one).
template <class PerRun, class ObserverFor>
void sweep(const ExperimentConfig& cfg, const Objective& objective, unsigned threads,
           json& manifest, TraceFiles& files, PerRun&& per_run, ObserverFor&& observer_for) {
    for (Method m : cfg.methods) {
        RunConfig rc;
        rc.method = m;
        rc.population_size = cfg.population;
        rc.generations = cfg.generations_for(m);
        rc.f = cfg.f;
        rc.crossover_rate = cfg.p;
        rc.threads = threads;
        std::vector<RunTrace> traces;
        for (std::size_t r = 0; r < cfg.repeats; ++r) {
            rc.seed = cfg.seed + r;
            auto trace = run(rc, objective, observer_for(m, r));
            json rj = run_json(m, r, rc, trace);
            per_run(rj, trace);
            manifest["runs"].push_back(std::move(rj));
            files.add(m, r, trace);
            trace.records.shrink_to_fit();
            traces.push_back(std::move(trace));
        }
        files.add_summary(m, summarize(traces));
    }
}

void run_benchmark(const ExperimentConfig& cfg, unsigned threads, json& manifest) {
    const auto fn = *cfg.benchmark;
    const bool standard = cfg.griewank_standard;
    Objective objective(bench::default_bounds(fn, cfg.dim),
                        [fn, standard](std::span<const double> x) {
                            return bench::evaluate(fn, x, standard);
                        },
                        std::string(bench::to_string(fn)));
    TraceFiles files;
    sweep(cfg, objective, threads, manifest, files,
          [](json& rj, const RunTrace& t) {
              const auto& best = t.final_population.members[t.final_population.best_index()];
              rj["best_candidate"] = best.values;
          },
          [](Method, std::size_t) { return GenerationObserver{}; });
    files.write(cfg.output_dir, manifest["files"]);
}

void run_repressilator(const ExperimentConfig& cfg, unsigned threads, json& manifest) {
    namespace rp = repressilator;
    rp::ObservationSet obs;
    if (cfg.observations) {
        obs = rp::read_observations_csv(*cfg.observations);
    } else {
        Rng data_rng(cfg.data_seed.value_or(cfg.seed));
        const auto truth = rp::Params::from_vector(cfg.truth);
        obs = rp::generate_observations(truth, rp::kReferenceInitialState,
                                        rp::uniform_times(cfg.obs_count, cfg.t_end),
                                        cfg.noise_std, data_rng);
    }
    {
        std::ostringstream out;
        rp::write_observations_csv(out, obs);
        atomic_write_file(cfg.output_dir / "observations.csv", out.str());
        manifest["files"].push_back("observations.csv");
    }

    BoxBounds bounds(Vector(cfg.param_lower.begin(), cfg.param_lower.end()),
                     Vector(cfg.param_upper.begin(), cfg.param_upper.end()));
    Objective objective(std::move(bounds), rp::make_evaluator(obs), "repressilator");

    // Population snapshots for the first repeat of each method.
    std::map<Method, std::ostringstream> snapshots;
    TraceFiles files;
    sweep(cfg, objective, threads, manifest, files,
          [](json& rj, const RunTrace& t) {
              const auto& best = t.final_population.members[t.final_population.best_index()];
              const auto p = rp::Params::from_vector(best.values);
              rj["best_candidate"] = {{"alpha0", p.alpha0}, {"n", p.n}, {"beta", p.beta},
                                      {"alpha", p.alpha}};
          },
          [&](Method m, std::size_t r) -> GenerationObserver {
              if (r != 0) return {};
              auto& out = snapshots[m];
              out << rp::kPopulationCsvHeader << '\n';
              return [&out](const Population& pop) { rp::append_population_rows(out, pop); };
          });
    files.write(cfg.output_dir, manifest["files"]);
    for (auto& [m, text] : snapshots) {
        const auto name = "population_" + lower(to_string(m)) + ".csv";
        atomic_write_file(cfg.output_dir / name, text.str());
        manifest["files"].push_back(name);
    }
}

idx::ImageDataset load_images(const fs::path& images, const fs::path& labels) {
    auto data = idx::load_idx(images, labels);
    if (data.rows == 28 && data.cols == 28) return mlp::downsample(data);
    if (data.rows == 14 && data.cols == 14) return data;
    throw ContractViolation("expected 28x28 or 14x14 images in " + images.string());
}

void run_mlp(const ExperimentConfig& cfg, unsigned threads, json& manifest) {
    auto train = mlp::take_subset(load_images(*cfg.train_images, *cfg.train_labels),
                                  cfg.train_size, cfg.shuffle_seed);
    manifest["train_records"] = train.size();
    std::optional<idx::ImageDataset> test;
    if (cfg.test_images) {
        test = load_images(*cfg.test_images, *cfg.test_labels);
        manifest["test_records"] = test->size();
    }
    manifest["weights"] = mlp::MlpShape::total_weights;

    Objective objective(mlp::weight_bounds(cfg.weight_bound), mlp::make_evaluator(std::move(train)),
                        "mlp");
    TraceFiles files;
    sweep(cfg, objective, threads, manifest, files,
          [&](json& rj, const RunTrace& t) {
              const auto& best = t.final_population.members[t.final_population.best_index()];
              rj["best_train_error"] = *best.objective;
              if (test) rj["test_error"] = mlp::classification_error(best.values, *test);
          },
          [](Method, std::size_t) { return GenerationObserver{}; });
    files.write(cfg.output_dir, manifest["files"]);
}

}  // namespace

std::string_view version() noexcept { return REVDE_VERSION_STRING; }

unsigned resolve_threads() {
    if (const char* env = std::getenv("REVDE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string eigen_table_csv(double f_max, double f_step) {
    if (!(f_max > 0.0 && f_step > 0.0)) throw ContractViolation("f_max and f_step must be positive");
    std::ostringstream out;
    out << "kind,F,re1,im1,abs1,re2,im2,abs2,re3,im3,abs3,det\n";
    const auto count = static_cast<std::size_t>(std::floor(f_max / f_step + 1e-9));
    for (auto kind : {MatrixKind::AdeM, MatrixKind::RevdeR}) {
        for (std::size_t k = 1; k <= count; ++k) {
            const double F = static_cast<double>(k) * f_step;
            const auto m = build_matrix(kind, ScalingFactor(F));
            const auto rep = eigen_report(m);
            out << to_string(kind) << ',' << format_double(F);
            for (std::size_t i = 0; i < 3; ++i) {
                out << ',' << format_double(rep.eigenvalues[i].real()) << ','
                    << format_double(rep.eigenvalues[i].imag()) << ','
                    << format_double(rep.moduli[i]);
            }
            out << ',' << format_double(determinant(m)) << '\n';
        }
    }
    return out.str();
}

int run_experiment(const ExperimentConfig& config, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    json manifest;
    manifest["version"] = version();
    manifest["config"] = config_json(config);
    manifest["files"] = json::array();
    manifest["runs"] = json::array();
    const unsigned threads = resolve_threads();
    manifest["threads"] = threads;

    int status = 0;
    try {
        fs::create_directories(config.output_dir);
        switch (config.problem) {
            case Problem::Analysis:
                atomic_write_file(config.output_dir / "eigen.csv",
                                  eigen_table_csv(config.f_max, config.f_step));
                manifest["files"].push_back("eigen.csv");
                break;
            case Problem::Benchmark: run_benchmark(config, threads, manifest); break;
            case Problem::Repressilator: run_repressilator(config, threads, manifest); break;
            case Problem::Mlp: run_mlp(config, threads, manifest); break;
        }
        manifest["status"] = "ok";
    } catch (const std::exception& e) {
        manifest["status"] = "error";
        manifest["error"] = e.what();
        err << "revde: " << e.what() << '\n';
        status = 1;
    }
    manifest["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    try {
        fs::create_directories(config.output_dir);
        atomic_write_file(config.output_dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
        err << "revde: cannot write manifest: " << e.what() << '\n';
        status = status ? status : 1;
    }
    return status;
}

}  // namespace revde
