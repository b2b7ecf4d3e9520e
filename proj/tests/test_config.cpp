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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "revde/config.hpp"
#include "revde/experiment.hpp"

using namespace revde;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("revde_cfg_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> csv_files(const fs::path& dir) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace

TEST_CASE("benchmark defaults") {
    const auto c = parse_config(
        "", {"--problem", "benchmark", "--benchmark", "rastrigin", "--dim", "10", "--method", "revde"});
    CHECK(c.problem == Problem::Benchmark);
    CHECK(c.population == 500);
    CHECK(c.p == 0.9);
    CHECK(c.repeats == 10);
    CHECK(c.f == 0.5);
    CHECK(c.dim == 10);
    CHECK(c.benchmark == bench::Function::Rastrigin);
    CHECK(c.methods == std::vector<Method>{Method::Revde});
}

TEST_CASE("negative F is rejected") {
    CHECK_THROWS_AS(parse_config("problem = analysis\nf = -0.5\n", {}), ConfigError);
    CHECK_THROWS_AS(parse_config("problem = analysis\n", {"--f=0"}), ConfigError);
}

TEST_CASE("flags override the file") {
    const std::string file = "problem = benchmark\nbenchmark = salomon\ndim = 4\nN = 40\nf = 0.3\n";
    const auto from_file = parse_config(file, {});
    CHECK(from_file.population == 40);
    CHECK(from_file.f == 0.3);
    const auto flagged = parse_config(file, {"--population", "60", "--f=0.7"});
    CHECK(flagged.population == 60);
    CHECK(flagged.f == 0.7);
    CHECK(flagged.benchmark == bench::Function::Salomon);
}

TEST_CASE("malformed input is diagnosed") {
    auto message = [](std::string_view text, std::vector<std::string> flags) -> std::string {
        try {
            parse_config(text, flags, "exp.cfg");
        } catch (const ConfigError& e) {
            return e.what();
        }
        return {};
    };
    CHECK(message("problem = analysis\ncolour = red\n", {}).find("colour") != std::string::npos);
    CHECK(message("problem = analysis\ncolour = red\n", {}).find("exp.cfg:2") != std::string::npos);
    CHECK(message("problem = analysis\n", {"--bogus", "1"}).find("--bogus") != std::string::npos);
    CHECK(message("problem = analysis\nN = many\n", {}).find("exp.cfg:2") != std::string::npos);
    CHECK_FALSE(message("problem = benchmark\nbenchmark = rastrigin\n", {}).empty());
    CHECK_FALSE(message("problem = mlp\n", {}).empty());
    CHECK_FALSE(message("problem = analysis\nf = 1\nf = 2\n", {}).empty());
    CHECK_FALSE(message("problem = benchmark\nbenchmark = ackley\ndim = 2\n", {}).empty());
}

TEST_CASE("problem dependent defaults and budget matching") {
    const auto b = parse_config("problem = benchmark\nbenchmark = rastrigin\ndim = 10\n", {});
    CHECK(b.methods.size() == 4);
    CHECK(b.generations == 150);
    CHECK(b.generations_for(Method::De) == 450);
    CHECK(b.generations_for(Method::Revde) == 150);
    const auto r = parse_config("problem = repressilator\n", {});
    CHECK(r.generations == 20);
    CHECK(r.methods == std::vector<Method>{Method::Dex3, Method::Ade, Method::Revde});
    const auto de_only = parse_config("problem = benchmark\nbenchmark = rastrigin\ndim = 2\nmethods = de\n",
                                      {"--no-budget-match"});
    CHECK(de_only.generations_for(Method::De) == de_only.generations);
}

TEST_CASE("analysis writes the eigenvalue table") {
    TempDir dir;
    auto c = parse_config("problem = analysis\n", {"--output-dir", dir.path.string()});
    std::ostringstream err;
    REQUIRE(run_experiment(c, err) == 0);
    const auto text = slurp(dir.path / "eigen.csv");
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "kind,F,re1,im1,abs1,re2,im2,abs2,re3,im3,abs3,det");
    std::size_t ade = 0, rev = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("ADE,", 0) == 0) ++ade;
        if (line.rfind("REVDE,", 0) == 0) ++rev;
    }
    CHECK(ade == 128);
    CHECK(rev == 128);
    CHECK(fs::exists(dir.path / "manifest.json"));
}

TEST_CASE("benchmark run writes four traces and a summary, reproducibly") {
    TempDir dir;
    const std::vector<std::string> common{"--problem", "benchmark", "--benchmark", "rastrigin",
                                          "--dim", "3", "--N", "8", "--G", "5", "--repeats", "2",
                                          "--seed", "11"};
    auto flags_a = common;
    flags_a.insert(flags_a.end(), {"--output-dir", (dir.path / "a").string()});
    auto flags_b = common;
    flags_b.insert(flags_b.end(), {"--output-dir", (dir.path / "b").string()});

    std::ostringstream err;
    REQUIRE(run_experiment(parse_config("", flags_a), err) == 0);
    REQUIRE(run_experiment(parse_config("", flags_b), err) == 0);

    const auto names = csv_files(dir.path / "a");
    CHECK(names == std::vector<std::string>{"summary.csv", "trace_ade.csv", "trace_de.csv",
                                            "trace_dex3.csv", "trace_revde.csv"});
    for (const auto& n : names) CHECK(slurp(dir.path / "a" / n) == slurp(dir.path / "b" / n));

    const auto manifest = nlohmann::json::parse(slurp(dir.path / "a" / "manifest.json"));
    CHECK(manifest["status"] == "ok");
    CHECK(manifest["version"] == std::string(version()));
    CHECK(manifest["config"]["seed"] == 11);
    CHECK(manifest.contains("wall_time_seconds"));
}

TEST_CASE("manifest is written when the run fails") {
    TempDir dir;
    const auto c = parse_config("problem = mlp\n",
                                {"--train-images", (dir.path / "none-img").string(),
                                 "--train-labels", (dir.path / "none-lab").string(),
                                 "--output-dir", (dir.path / "out").string()});
    std::ostringstream err;
    CHECK(run_experiment(c, err) != 0);
    CHECK_FALSE(err.str().empty());
    const auto manifest = nlohmann::json::parse(slurp(dir.path / "out" / "manifest.json"));
    CHECK(manifest["status"] == "error");
    CHECK(manifest["error"].get<std::string>().size() > 0);
}
