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

#include <cmath>
#include <limits>
#include <sstream>

#include "revde/benchmarks.hpp"
#include "revde/engine.hpp"

using namespace revde;

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

RunConfig small_config(Method m, std::size_t n = 20, std::size_t g = 50) {
    RunConfig c;
    c.method = m;
    c.population_size = n;
    c.generations = g;
    c.f = 0.5;
    c.seed = 42;
    return c;
}

bool non_increasing(const RunTrace& t) {
    for (std::size_t k = 1; k < t.records.size(); ++k) {
        if (t.records[k].best_objective > t.records[k - 1].best_objective) return false;
        if (t.records[k].evaluation != t.records[k - 1].evaluation + 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("initialize_population") {
    Rng rng(7);
    const auto box = BoxBounds::uniform(2, -5, 5);
    const auto pop = initialize_population(box, 4, rng);
    CHECK(pop.size() == 4);
    for (const auto& m : pop.members) {
        CHECK(box.contains(m.values));
        CHECK_FALSE(m.evaluated());
    }

    const BoxBounds tiny({0.0}, {1e-12});
    Rng rng2(8);
    for (const auto& m : initialize_population(tiny, 10, rng2).members) {
        CHECK(m.values[0] >= 0.0);
        CHECK(m.values[0] <= 1e-12);
    }

    Rng a(123), b(123);
    const auto pa = initialize_population(box, 6, a);
    const auto pb = initialize_population(box, 6, b);
    for (std::size_t i = 0; i < 6; ++i) CHECK(pa.members[i].values == pb.members[i].values);

    CHECK_THROWS_AS(initialize_population(box, 3, rng), ContractViolation);
    CHECK_THROWS_AS(BoxBounds({1.0}, {1.0}), ContractViolation);
}

TEST_CASE("run on a constant objective keeps the population") {
    for (Method m : kAllMethods) {
        Objective obj(BoxBounds::uniform(3, -1, 1), [](std::span<const double>) { return 4.25; });
        Rng rng(42);
        const auto init = initialize_population(obj.bounds(), 10, rng);
        const auto trace = run(small_config(m, 10, 5), obj);
        for (const auto& r : trace.records) CHECK(r.best_objective == 4.25);
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(trace.final_population.members[i].values == init.members[i].values);
        }
    }
}

TEST_CASE("run improves on the sphere and accounts for every evaluation") {
    for (Method m : kAllMethods) {
        CAPTURE(to_string(m));
        Objective obj(BoxBounds::uniform(2, -5, 5), sphere);
        const auto cfg = small_config(m);
        const auto trace = run(cfg, obj);
        CHECK(obj.evaluations() == cfg.expected_evaluations());
        CHECK(trace.records.size() == cfg.expected_evaluations());
        const std::uint64_t n = 20, g = 50;
        CHECK(cfg.expected_evaluations() == (m == Method::De ? n + g * n : n + g * 3 * n));
        CHECK(non_increasing(trace));
        CHECK(trace.records.back().best_objective < trace.records[19].best_objective);
        CHECK(trace.final_population.generation == 50);
    }
}

TEST_CASE("run is deterministic for a fixed seed") {
    for (Method m : kAllMethods) {
        Objective obj(BoxBounds::uniform(4, -5, 5),
                      [](std::span<const double> x) { return bench::rastrigin(x); });
        const auto a = run(small_config(m), obj);
        const auto b = run(small_config(m), obj);
        CHECK(a.records == b.records);
        std::ostringstream sa, sb;
        write_trace_csv(sa, a);
        write_trace_csv(sb, b);
        CHECK(sa.str() == sb.str());
    }
}

TEST_CASE("parallel evaluation does not change the trace") {
    Objective obj(BoxBounds::uniform(5, -5, 5),
                  [](std::span<const double> x) { return bench::rastrigin(x); });
    auto cfg = small_config(Method::Revde);
    const auto serial = run(cfg, obj);
    cfg.threads = 4;
    const auto parallel = run(cfg, obj);
    CHECK(serial.records == parallel.records);
}

TEST_CASE("no out-of-bounds candidate is evaluated") {
    const auto box = BoxBounds::uniform(3, 200, 500);
    std::atomic<int> violations{0};
    Objective obj(box, [&](std::span<const double> x) {
        if (!box.contains(x)) ++violations;
        return bench::schwefel(x);
    });
    for (Method m : kAllMethods) {
        auto cfg = small_config(m, 12, 20);
        cfg.f = 2.0;  // large steps push trials outside the box
        run(cfg, obj);
    }
    CHECK(violations.load() == 0);
}

TEST_CASE("NaN objective is scored as +inf and flagged") {
    Objective obj(BoxBounds::uniform(2, -1, 1), [](std::span<const double> x) {
        return x[0] > 0.0 ? std::numeric_limits<double>::quiet_NaN() : x[0] * x[0];
    });
    const auto trace = run(small_config(Method::Ade, 10, 5), obj);
    CHECK(trace.nan_evaluations > 0);
    CHECK(trace.infinite_evaluations >= trace.nan_evaluations);
    for (const auto& m : trace.final_population.members) CHECK_FALSE(std::isnan(*m.objective));
    CHECK(std::isfinite(trace.records.back().best_objective));
}

TEST_CASE("DEx3 with fewer than seven members still runs") {
    Objective obj(BoxBounds::uniform(2, -5, 5), sphere);
    const auto cfg = small_config(Method::Dex3, 4, 10);
    const auto trace = run(cfg, obj);
    CHECK(trace.records.size() == 4 + 10 * 12);
}

TEST_CASE("budget matching gives equal evaluation counts") {
    auto de = small_config(Method::De, 30, 3 * 7);
    auto rev = small_config(Method::Revde, 30, 7);
    CHECK(de.expected_evaluations() == rev.expected_evaluations());
}

TEST_CASE("RunConfig validation") {
    auto c = small_config(Method::De);
    c.population_size = 3;
    CHECK_THROWS_AS(c.validate(), ContractViolation);
    c = small_config(Method::De);
    c.generations = 0;
    CHECK_THROWS_AS(c.validate(), ContractViolation);
    c = small_config(Method::De);
    c.crossover_rate = 0.0;
    CHECK_THROWS_AS(c.validate(), ContractViolation);
    c = small_config(Method::De);
    c.f = 0.0;
    CHECK_THROWS_AS(c.validate(), ContractViolation);
}

TEST_CASE("run_repeated") {
    SUBCASE("one repeat") {
        Objective obj(BoxBounds::uniform(2, -5, 5), sphere);
        const auto rr = run_repeated(small_config(Method::Revde, 10, 5), obj, 1);
        REQUIRE(rr.traces.size() == 1);
        for (std::size_t k = 0; k < rr.summary.mean.size(); ++k) {
            CHECK(rr.summary.mean[k] == rr.traces[0].records[k].best_objective);
            CHECK(rr.summary.std[k] == 0.0);
        }
    }
    SUBCASE("constant objective") {
        Objective obj(BoxBounds::uniform(2, -5, 5), [](std::span<const double>) { return 2.0; });
        const auto rr = run_repeated(small_config(Method::De, 10, 5), obj, 3);
        for (std::size_t k = 0; k < rr.summary.mean.size(); ++k) {
            CHECK(rr.summary.mean[k] == 2.0);
            CHECK(rr.summary.std[k] == 0.0);
        }
    }
    SUBCASE("seeds are seed + r and mean is non-increasing") {
        Objective obj(BoxBounds::uniform(10, -5, 5), sphere);
        const auto cfg = small_config(Method::Ade, 20, 20);
        const auto rr = run_repeated(cfg, obj, 10);
        auto third = cfg;
        third.seed = cfg.seed + 2;
        CHECK(run(third, obj).records == rr.traces[2].records);
        for (std::size_t k = 1; k < rr.summary.mean.size(); ++k) {
            CHECK(rr.summary.mean[k] <= rr.summary.mean[k - 1]);
        }
    }
    Objective obj(BoxBounds::uniform(2, -5, 5), sphere);
    CHECK_THROWS_AS(run_repeated(small_config(Method::De), obj, 0), ContractViolation);
}

TEST_CASE("CSV writers use the documented schemas") {
    RunTrace t;
    t.records = {{1, 3.5}, {2, 0.1}, {3, std::numeric_limits<double>::infinity()}};
    std::ostringstream out;
    write_trace_csv(out, t);
    CHECK(out.str() == "evaluation,best_objective\n1,3.5\n2,0.1\n3,inf\n");

    TraceSummary s;
    s.evaluation = {1, 2};
    s.mean = {1.25, 1.0 / 3.0};
    s.std = {0.0, 0.5};
    std::ostringstream sum;
    write_summary_csv(sum, s);
    CHECK(sum.str() == "evaluation,mean,std\n1,1.25,0\n2,0.3333333333333333,0.5\n");
}

TEST_CASE("parse_method") {
    CHECK(parse_method("RevDE") == Method::Revde);
    CHECK(parse_method("dex3") == Method::Dex3);
    CHECK_FALSE(parse_method("jade").has_value());
}
