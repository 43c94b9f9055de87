#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "faasim/time.hpp"

namespace faasim {

enum class HpaMetric : std::uint8_t { Cpu, Memory };

struct HpaConfig {
    HpaMetric metric = HpaMetric::Cpu;
    double target_fraction = 0.5;
    SimTime sync_period = SimTime::from_seconds(15.0);
    std::uint32_t min_replicas = 1;
    std::uint32_t max_replicas = 10;
    double tolerance = 0.1;
};

enum class KpaMetric : std::uint8_t { Concurrency, Rps };

struct KpaConfig {
    KpaMetric metric = KpaMetric::Concurrency;
    double target = 10.0;
    SimTime tick = SimTime::from_seconds(2.0);
    SimTime stable_window = SimTime::from_seconds(10.0);
    double max_scale_up_rate = 100.0;
    std::uint32_t min_scale = 1;
    std::uint32_t max_scale = 10;
    bool scale_to_zero = false;
    SimTime scale_to_zero_grace = SimTime::from_seconds(30.0);
};

struct RpsAlertConfig {
    double rps_threshold = 10.0;
    SimTime alert_window = SimTime::from_seconds(2.0);
    double scale_factor_percent = 10.0;
    SimTime scrape_interval = SimTime::from_seconds(1.0);
    SimTime pipeline_delay = SimTime::from_seconds(1.0);
    std::uint32_t min_replicas = 1;
    std::uint32_t max_replicas = 10;
};

struct MetricPoint {
    SimTime t;
    double value;
};

struct AutoscalerState {
    std::uint32_t current_desired = 1;
    std::deque<MetricPoint> window;
    SimTime last_action_at{0};
    // kpa scale-to-zero bookkeeping
    std::optional<SimTime> zero_since;
    // rps-alert pending/firing state (Prometheus-style `for` clause: the
    // condition must hold across two consecutive evaluations before the
    // first alert goes out)
    bool alert_pending = false;
    bool alert_firing = false;
};

// desired = ceil(ready * mean_metric / target), held when within tolerance.
// Saturated pods double the replica count each period until the max clamp.
std::uint32_t hpa_desired(const HpaConfig& cfg, std::uint32_t current_ready, double mean_metric,
                          std::uint32_t current_desired);

// Sliding stable-window average, zero-padded before t=0; one sample per tick.
// Returns 0 only when scale-to-zero is enabled and the window has been empty
// for the grace period.
std::uint32_t kpa_desired(const KpaConfig& cfg, AutoscalerState& state, double sample,
                          SimTime now);

struct RpsAlertDecision {
    bool fire = false;  // deliver a scale step after pipeline_delay
    int step = 0;       // +1 on alert, -1 on a resolved window
};

RpsAlertDecision rps_alert_evaluate(const RpsAlertConfig& cfg, AutoscalerState& state, double rps,
                                    std::uint32_t current_desired);

// Replica delta applied on an alert: ceil(scale_factor% of max).
std::uint32_t rps_alert_step(const RpsAlertConfig& cfg);

}  // namespace faasim
