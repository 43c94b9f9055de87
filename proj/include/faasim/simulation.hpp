#pragma once

#include <cstdint>
#include <vector>

#include "faasim/autoscaler.hpp"
#include "faasim/cluster.hpp"
#include "faasim/engine.hpp"
#include "faasim/gateway.hpp"
#include "faasim/metrics.hpp"
#include "faasim/result.hpp"
#include "faasim/scenario.hpp"
#include "faasim/workload.hpp"

namespace faasim {

// Assembles one scenario into a runnable system: workload -> gateway ->
// pods, with the configured autoscaler and the metrics scraper on the side.
// One instance per run; runs share nothing.
class Simulation {
public:
    explicit Simulation(Scenario scenario);

    ResultBundle run();

    struct PodCountPoint {
        SimTime t;
        std::uint32_t ready;
    };
    struct ScaleAction {
        SimTime t;
        std::uint32_t spawned;
    };
    const std::vector<PodCountPoint>& pod_count_trace() const { return pod_trace_; }
    const std::vector<ScaleAction>& scale_actions() const { return scale_actions_; }
    std::uint64_t bounce_count() const { return bounces_; }
    const Cluster& cluster() const { return cluster_; }
    const RequestStore& requests() const { return store_; }
    const Workload& workload() const { return workload_; }
    const MetricsCollector& metrics() const { return metrics_; }

private:
    void dispatch(const SimEvent& ev);
    void handle_arrival(const SimEvent& ev);
    void handle_pod_dispatch(const SimEvent& ev);
    void handle_service_complete(const SimEvent& ev);
    void handle_response(const SimEvent& ev);
    void handle_timeout(const SimEvent& ev);
    void handle_gateway_timeout(const SimEvent& ev);
    void handle_kick(const SimEvent& ev);
    void handle_pod_ready(const SimEvent& ev);
    void handle_autoscaler_tick(const SimEvent& ev);
    void handle_scrape(const SimEvent& ev);
    void handle_alert(const SimEvent& ev);

    void refuse_to_client(Request& req, SimTime now, bool at_pod);
    void schedule_kick(SimTime now);
    void apply_desired_recorded(std::uint32_t desired, SimTime now);
    void record_pod_trace(SimTime now);
    void finalize_outstanding(Request& req);
    RunSummary summarize(const RunStats& rs);

    Scenario scn_;
    Engine engine_;
    RequestStore store_;
    Cluster cluster_;
    Gateway gateway_;
    Workload workload_;
    MetricsCollector metrics_;
    AutoscalerState as_state_;

    LatencyHistogram latency_;
    double latency_sum_us_ = 0.0;
    std::uint64_t measured_completions_ = 0;
    std::uint64_t completions_since_scrape_ = 0;
    std::int64_t platform_outstanding_ = 0;

    std::uint64_t drop_events_ingress_ = 0;
    std::uint64_t drop_events_pod_ = 0;
    std::uint64_t bounces_ = 0;
    std::uint32_t peak_ready_ = 0;
    bool kick_pending_ = false;

    std::vector<PodCountPoint> pod_trace_;
    std::vector<ScaleAction> scale_actions_;
};

// Convenience entry point used by the CLI and the bindings.
ResultBundle run_scenario(const Scenario& scenario);

}  // namespace faasim
