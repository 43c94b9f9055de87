#include <doctest.h>

#include "faasim/scenario.hpp"
#include "faasim/sweep.hpp"

using namespace faasim;

namespace {

Scenario base_scenario(double jitter) {
    std::string j = R"({
        "name": "sweep-base", "archetype": "nuclio", "duration": 6, "warmup": 1,
        "workload": {"mode": "closed-loop", "connections": 10},
        "cluster": {"initial_replicas": 1, "max_replicas": 1,
                    "service_jitter_fraction": )" +
                    std::to_string(jitter) + "}}";
    return scenario_from_json(j);
}

}  // namespace

TEST_CASE("deterministic service: zero std across 20 seeds") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
    auto cells = run_sweep(base_scenario(0.0), seeds, {1, 10, 100});
    REQUIRE(cells.size() == 3);
    for (const auto& c : cells) {
        CHECK(c.runs == 20);
        CHECK(c.throughput_std == 0.0);
    }
    // closed-loop saturation: more connections never reduce throughput
    CHECK(cells[0].throughput_mean <= cells[1].throughput_mean);
    CHECK(cells[1].throughput_mean <= cells[2].throughput_mean + 1.0);
}

TEST_CASE("jitter spreads seeds but preserves the mean") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
    auto flat = run_sweep(base_scenario(0.0), seeds, {10});
    auto noisy = run_sweep(base_scenario(0.2), seeds, {10});
    CHECK(noisy[0].throughput_std > 0.0);
    CHECK(noisy[0].throughput_mean ==
          doctest::Approx(flat[0].throughput_mean).epsilon(0.02));
}

TEST_CASE("sweep rejects empty plans") {
    CHECK_THROWS_AS(run_sweep(base_scenario(0.0), {}, {1}), ScenarioError);
    CHECK_THROWS_AS(run_sweep(base_scenario(0.0), {1}, {}), ScenarioError);
}

TEST_CASE("sweep csv carries one row per concurrency") {
    auto cells = run_sweep(base_scenario(0.0), {1, 2}, {1, 10, 100});
    std::string csv = sweep_csv(cells);
    CHECK(csv.find("concurrency,runs,throughput_mean_rps,throughput_std_rps,p99_mean_us") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
