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

// revde: command-line entry point.
//
//   revde run [config] [--key value ...]
//   revde analyze [--f-max 2.0] [--f-step 0.015625] [--output-dir DIR]

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revde/config.hpp"
#include "revde/csv.hpp"
#include "revde/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Differential evolution with reversible linear transformations"};
    app.set_version_flag("--version", std::string(revde::version()));
    app.require_subcommand(1);

    auto* run = app.add_subcommand(
        "run", "Run an experiment from a flat key = value config; --key value flags override it");
    // Flags are interpreted by revde::parse_config, so everything after `run`
    // is passed through untouched.
    run->allow_extras();

    auto* analyze = app.add_subcommand("analyze", "Write the eigenvalue/determinant table (eigen.csv)");
    double f_max = 2.0;
    double f_step = 1.0 / 64.0;
    std::string out_dir = "results";
    analyze->add_option("--f-max", f_max, "Largest F in the sweep")->check(CLI::PositiveNumber);
    analyze->add_option("--f-step", f_step, "Step between F values")->check(CLI::PositiveNumber);
    analyze->add_option("--output-dir", out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    revde::ExperimentConfig config;
    try {
        if (run->parsed()) {
            std::vector<std::string> args = run->remaining();
            std::optional<std::filesystem::path> path;
            if (!args.empty() && args.front().rfind("--", 0) != 0) {
                path = args.front();
                args.erase(args.begin());
            }
            config = revde::load_config(path, args);
        } else {
            config = revde::parse_config(
                "", {"--problem", "analysis", "--f-max", revde::format_double(f_max), "--f-step",
                     revde::format_double(f_step), "--output-dir", out_dir});
        }
    } catch (const revde::ConfigError& e) {
        std::cerr << "revde: config error: " << e.what() << '\n';
        return 2;
    }
    return revde::run_experiment(config, std::cerr);
}
