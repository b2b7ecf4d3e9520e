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

#include "revde/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace revde {
namespace {

struct Entry {
    std::string value;
    std::string origin;  // "file:line" or "--flag"
};

const std::map<std::string, std::string, std::less<>>& aliases() {
    static const std::map<std::string, std::string, std::less<>> table{
        {"N", "population"},     {"G", "generations"}, {"F", "f"},
        {"method", "methods"},   {"crossover_rate", "p"},
    };
    return table;
}

constexpr std::array kKnownKeys{
    "problem",      "methods",      "population",   "generations",      "f",
    "p",            "seed",         "repeats",      "budget_match",     "output_dir",
    "benchmark",    "dim",          "griewank_standard", "noise_std",   "obs_count",
    "t_end",        "observations", "truth",        "param_lower",      "param_upper",
    "data_seed",    "train_images", "train_labels", "test_images",      "test_labels",
    "train_size",   "shuffle_seed", "weight_bound", "f_max",            "f_step",
};

std::string canonical(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    if (auto it = aliases().find(key); it != aliases().end()) return it->second;
    return key;
}

bool known(std::string_view key) {
    return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(const Entry& e, const std::string& what) {
    throw ConfigError(e.origin + ": " + what);
}

std::uint64_t as_uint(const Entry& e) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) fail(e, "expected a non-negative integer, got '" + e.value + "'");
    return v;
}

double as_double(const Entry& e, std::string_view text) {
    double v = 0.0;
    const std::string s = trim(text);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        fail(e, "expected a finite number, got '" + std::string(text) + "'");
    }
    return v;
}

double as_double(const Entry& e) { return as_double(e, e.value); }

bool as_bool(const Entry& e) {
    std::string v = e.value;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(e, "expected a boolean, got '" + e.value + "'");
}

std::vector<std::string> split_commas(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto piece = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
        out.push_back(trim(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::array<double, 4> as_quad(const Entry& e) {
    const auto parts = split_commas(e.value);
    if (parts.size() != 4) fail(e, "expected 4 comma-separated numbers");
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[k] = as_double(e, parts[k]);
    return out;
}

std::vector<Method> as_methods(const Entry& e) {
    std::vector<Method> out;
    for (const auto& name : split_commas(e.value)) {
        if (name == "all" || name == "ALL") {
            out.assign(kAllMethods.begin(), kAllMethods.end());
            continue;
        }
        const auto m = parse_method(name);
        if (!m) fail(e, "unknown method '" + name + "' (expected de, dex3, ade, revde or all)");
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    if (out.empty()) fail(e, "no methods given");
    return out;
}

using Entries = std::map<std::string, Entry, std::less<>>;

void read_file(std::string_view text, std::string_view file_name, Entries& entries) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string origin = std::string(file_name) + ":" + std::to_string(lineno);
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError(origin + ": expected 'key = value'");
        const std::string raw_key = trim(std::string_view(body).substr(0, eq));
        const std::string key = canonical(raw_key);
        if (!known(key)) throw ConfigError(origin + ": unknown key '" + raw_key + "'");
        if (entries.contains(key)) throw ConfigError(origin + ": duplicate key '" + raw_key + "'");
        entries[key] = Entry{trim(std::string_view(body).substr(eq + 1)), origin};
    }
}

void read_flags(const std::vector<std::string>& flags, Entries& entries) {
    Entries from_flags;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        const std::string& arg = flags[i];
        if (arg.rfind("--", 0) != 0) throw ConfigError(arg + ": expected a --flag");
        std::string name = arg.substr(2);
        std::optional<std::string> value;
        if (const auto eq = name.find('='); eq != std::string::npos) {
            value = name.substr(eq + 1);
            name.erase(eq);
        }
        const std::string origin = "--" + name;
        if (name == "no-budget-match" || name == "no_budget_match") {
            from_flags["budget_match"] = Entry{"false", origin};
            continue;
        }
        const std::string key = canonical(name);
        if (!known(key)) throw ConfigError(origin + ": unknown flag");
        if (!value) {
            if (key == "griewank_standard" || key == "budget_match") {
                value = "true";
            } else {
                if (i + 1 >= flags.size()) throw ConfigError(origin + ": missing value");
                value = flags[++i];
            }
        }
        if (key == "methods" && from_flags.contains(key)) {
            from_flags[key].value += "," + *value;
        } else {
            from_flags[key] = Entry{*value, origin};
        }
    }
    for (auto& [k, v] : from_flags) entries[k] = v;
}

Problem as_problem(const Entry& e) {
    if (e.value == "benchmark") return Problem::Benchmark;
    if (e.value == "repressilator") return Problem::Repressilator;
    if (e.value == "mlp") return Problem::Mlp;
    if (e.value == "analysis") return Problem::Analysis;
    fail(e, "unknown problem '" + e.value + "' (expected benchmark, repressilator, mlp, analysis)");
}

}  // namespace

std::string_view to_string(Problem p) noexcept {
    switch (p) {
        case Problem::Benchmark: return "benchmark";
        case Problem::Repressilator: return "repressilator";
        case Problem::Mlp: return "mlp";
        case Problem::Analysis: return "analysis";
    }
    return "?";
}

std::size_t ExperimentConfig::generations_for(Method m) const noexcept {
    if (!budget_match || m != Method::De) return generations;
    const bool has_triplet = std::any_of(methods.begin(), methods.end(),
                                         [](Method x) { return x != Method::De; });
    return has_triplet ? generations * 3 : generations;
}

ExperimentConfig parse_config(std::string_view file_text, const std::vector<std::string>& flags,
                              std::string_view file_name) {
    Entries entries;
    read_file(file_text, file_name, entries);
    read_flags(flags, entries);

    auto get = [&](std::string_view key) -> const Entry* {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    ExperimentConfig cfg;
    const Entry* problem = get("problem");
    if (!problem) throw ConfigError("missing required key 'problem'");
    cfg.problem = as_problem(*problem);

    // Problem-dependent defaults.
    switch (cfg.problem) {
        case Problem::Benchmark:
            cfg.methods.assign(kAllMethods.begin(), kAllMethods.end());
            cfg.generations = 150;
            break;
        case Problem::Repressilator:
            cfg.methods = {Method::Dex3, Method::Ade, Method::Revde};
            cfg.generations = 20;
            break;
        case Problem::Mlp:
            cfg.methods = {Method::Dex3, Method::Ade, Method::Revde};
            cfg.generations = 500;
            break;
        case Problem::Analysis:
            break;
    }

    if (auto e = get("methods")) cfg.methods = as_methods(*e);
    if (auto e = get("population")) {
        cfg.population = as_uint(*e);
        if (cfg.population < kMinPopulation) fail(*e, "population must be at least 4");
    }
    if (auto e = get("generations")) {
        cfg.generations = as_uint(*e);
        if (cfg.generations < 1) fail(*e, "generations must be at least 1");
    }
    if (auto e = get("f")) {
        cfg.f = as_double(*e);
        if (!(cfg.f > 0.0)) fail(*e, "F must be positive");
    }
    if (auto e = get("p")) {
        cfg.p = as_double(*e);
        if (!(cfg.p > 0.0 && cfg.p <= 1.0)) fail(*e, "crossover rate must be in (0, 1]");
    }
    if (auto e = get("seed")) cfg.seed = as_uint(*e);
    if (auto e = get("repeats")) {
        cfg.repeats = as_uint(*e);
        if (cfg.repeats < 1) fail(*e, "repeats must be at least 1");
    }
    if (auto e = get("budget_match")) cfg.budget_match = as_bool(*e);
    if (auto e = get("output_dir")) {
        if (e->value.empty()) fail(*e, "output_dir must not be empty");
        cfg.output_dir = e->value;
    }

    if (auto e = get("benchmark")) {
        cfg.benchmark = bench::parse_function(e->value);
        if (!cfg.benchmark) fail(*e, "unknown benchmark '" + e->value + "'");
    }
    if (auto e = get("dim")) {
        cfg.dim = as_uint(*e);
        if (cfg.dim < 1) fail(*e, "dim must be at least 1");
    }
    if (auto e = get("griewank_standard")) cfg.griewank_standard = as_bool(*e);

    if (auto e = get("noise_std")) {
        cfg.noise_std = as_double(*e);
        if (cfg.noise_std < 0.0) fail(*e, "noise_std must be non-negative");
    }
    if (auto e = get("obs_count")) {
        cfg.obs_count = as_uint(*e);
        if (cfg.obs_count < 1) fail(*e, "obs_count must be at least 1");
    }
    if (auto e = get("t_end")) {
        cfg.t_end = as_double(*e);
        if (!(cfg.t_end > 0.0)) fail(*e, "t_end must be positive");
    }
    if (auto e = get("observations")) cfg.observations = e->value;
    if (auto e = get("truth")) {
        cfg.truth = as_quad(*e);
        for (double v : cfg.truth) {
            if (v < 0.0) fail(*e, "true parameters must be non-negative");
        }
    }
    if (auto e = get("param_lower")) cfg.param_lower = as_quad(*e);
    if (auto e = get("param_upper")) cfg.param_upper = as_quad(*e);
    for (std::size_t k = 0; k < 4; ++k) {
        if (!(cfg.param_lower[k] < cfg.param_upper[k])) {
            const Entry* e = get("param_lower") ? get("param_lower") : get("param_upper");
            if (e) fail(*e, "param_lower must be below param_upper in every coordinate");
        }
        if (cfg.param_lower[k] < 0.0) fail(*get("param_lower"), "parameters must be non-negative");
    }
    if (auto e = get("data_seed")) cfg.data_seed = as_uint(*e);

    if (auto e = get("train_images")) cfg.train_images = e->value;
    if (auto e = get("train_labels")) cfg.train_labels = e->value;
    if (auto e = get("test_images")) cfg.test_images = e->value;
    if (auto e = get("test_labels")) cfg.test_labels = e->value;
    if (auto e = get("train_size")) {
        cfg.train_size = as_uint(*e);
        if (cfg.train_size < 1) fail(*e, "train_size must be at least 1");
    }
    if (auto e = get("shuffle_seed")) cfg.shuffle_seed = as_uint(*e);
    if (auto e = get("weight_bound")) {
        cfg.weight_bound = as_double(*e);
        if (!(cfg.weight_bound > 0.0)) fail(*e, "weight_bound must be positive");
    }

    if (auto e = get("f_max")) {
        cfg.f_max = as_double(*e);
        if (!(cfg.f_max > 0.0)) fail(*e, "f_max must be positive");
    }
    if (auto e = get("f_step")) {
        cfg.f_step = as_double(*e);
        if (!(cfg.f_step > 0.0)) fail(*e, "f_step must be positive");
    }

    // Required problem fields.
    if (cfg.problem == Problem::Benchmark) {
        if (!cfg.benchmark) throw ConfigError("benchmark problem requires 'benchmark'");
        if (cfg.dim == 0) throw ConfigError("benchmark problem requires 'dim'");
    }
    if (cfg.problem == Problem::Mlp) {
        if (!cfg.train_images || !cfg.train_labels) {
            throw ConfigError("mlp problem requires 'train_images' and 'train_labels'");
        }
        if (cfg.test_images.has_value() != cfg.test_labels.has_value()) {
            throw ConfigError("mlp problem needs both 'test_images' and 'test_labels' or neither");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& flags) {
    if (!path) return parse_config("", flags, "<none>");
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file " + path->string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), flags, path->string());
}

}  // namespace revde
