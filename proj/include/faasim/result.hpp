#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faasim/metrics.hpp"
#include "faasim/time.hpp"

namespace faasim {

struct RunSummary {
    std::string scenario;
    std::uint64_t seed = 0;
    double duration_s = 0.0;
    double warmup_s = 0.0;

    // conservation (logical requests); in_flight and the cross-check come
    // from an independent scan of request outcomes, not from arithmetic on
    // the other counters
    std::uint64_t issued = 0;
    std::uint64_t completed = 0;
    std::uint64_t timed_out = 0;
    std::uint64_t dropped = 0;
    std::uint64_t in_flight = 0;
    bool outcome_scan_matches = false;

    // attempt-level events
    std::uint64_t drop_events_ingress = 0;
    std::uint64_t drop_events_pod = 0;
    std::uint64_t retries = 0;

    // measurement window (post warm-up)
    std::uint64_t measured_completions = 0;
    double throughput_rps = 0.0;           // completions / measurement window
    double throughput_interval_mean = 0.0; // across scrape intervals
    double throughput_interval_std = 0.0;
    double mean_latency_us = 0.0;
    std::int64_t p50_us = 0;
    std::int64_t p90_us = 0;
    std::int64_t p99_us = 0;
    std::int64_t p999_us = 0;
    double mean_in_system = 0.0;  // time-average requests in system

    std::uint32_t peak_ready_pods = 0;
    std::uint64_t total_scrape_bytes = 0;

    std::uint64_t events_processed = 0;

    bool conservation_holds() const {
        return outcome_scan_matches && issued == completed + timed_out + dropped + in_flight;
    }
};

struct ResultBundle {
    RunSummary summary;
    std::vector<TimelineSample> timeline;
    LatencyHistogram histogram;

    std::string summary_json(int indent = 2) const;
    std::string timeline_csv() const;
    std::string histogram_csv() const;
    // Canonical byte representation; equal bytes == equal results.
    std::string serialize() const;
};

}  // namespace faasim
