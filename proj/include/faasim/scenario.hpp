#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "faasim/autoscaler.hpp"
#include "faasim/cluster.hpp"
#include "faasim/gateway.hpp"
#include "faasim/metrics.hpp"
#include "faasim/workload.hpp"

namespace faasim {

// Configuration errors carry the offending dotted key path.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ClusterConfig {
    std::uint32_t initial_replicas = 1;
    std::uint32_t max_replicas = 10;
    ColdStartProfile cold_start;
    ResourceModel resources;
    double service_jitter_fraction = 0.0;
};

using AutoscalerConfig = std::variant<std::monostate, HpaConfig, KpaConfig, RpsAlertConfig>;

struct Scenario {
    std::string name;
    Archetype archetype = Archetype::Custom;
    std::uint64_t seed = 1;
    SimTime duration{0};
    SimTime warmup{0};

    WorkloadSpec workload;
    ExecutionModel model;
    ServiceProfile service;
    ClusterConfig cluster;
    GatewayConfig gateway;
    AutoscalerConfig autoscaler;
    ScrapeConfig scrape;

    std::string to_json(int indent = 2) const;
};

// Parses and validates; unknown keys, missing required fields and invariant
// violations each raise a ScenarioError naming the key.
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

const char* archetype_name(Archetype a);
Archetype archetype_from_name(const std::string& name);

}  // namespace faasim
