#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "faasim/time.hpp"

namespace faasim {

struct ScrapeConfig {
    SimTime interval = SimTime::from_seconds(2.0);
    std::uint64_t per_pod_cost_bytes = 512;
    double sampling_fraction = 1.0;
};

// Fixed geometric grid from 1 us to 60 s. Ratio 1.04 keeps the percentile
// estimate (upper bucket edge) within 4% of the exact order statistic.
class LatencyHistogram {
public:
    static constexpr double kRatio = 1.04;
    static constexpr std::int64_t kMinUs = 1;
    static constexpr std::int64_t kMaxUs = 60'000'000;

    LatencyHistogram();

    void record(SimTime latency);

    // Upper edge of the first bucket whose cumulative count reaches p% of the
    // total. p in (0, 100]; empty histogram is an error the caller must handle.
    SimTime percentile(double p) const;

    std::uint64_t total() const { return total_; }
    SimTime min() const { return min_; }
    SimTime max() const { return max_; }

    std::size_t bucket_count() const { return counts_.size(); }
    std::uint64_t count_at(std::size_t i) const { return counts_[i]; }
    std::int64_t bucket_low_us(std::size_t i) const { return edges_[i]; }
    std::int64_t bucket_high_us(std::size_t i) const { return edges_[i + 1]; }

private:
    std::size_t bucket_for(std::int64_t us) const;

    std::vector<std::int64_t> edges_;  // bucket i covers [edges_[i], edges_[i+1])
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    SimTime min_{0};
    SimTime max_{0};
};

struct TimelineSample {
    SimTime t{0};
    std::uint32_t ready_pods = 0;
    std::uint32_t pending_pods = 0;
    double mean_cpu = 0.0;
    std::uint64_t total_mem_bytes = 0;
    double throughput_rps = 0.0;
    std::uint64_t scrape_bytes = 0;  // cumulative
};

// Periodic scrape of pod metrics. With sampling_fraction < 1 only a rotating
// section of pods is refreshed each round and the rest keep their last-known
// values, so worst-case staleness is interval / fraction.
class MetricsCollector {
public:
    explicit MetricsCollector(ScrapeConfig cfg = {}) : cfg_(cfg) {}

    struct PodView {
        std::uint64_t id;
        double cpu_fraction;
        std::uint64_t mem_bytes;
    };

    // `pods` must be sorted by id and carry freshly sampled values; the
    // collector decides which of them actually get refreshed this round.
    TimelineSample scrape(const std::vector<PodView>& pods, std::uint32_t pending_pods,
                          std::uint64_t completions_since_last, SimTime now);

    const ScrapeConfig& config() const { return cfg_; }
    const std::vector<TimelineSample>& timeline() const { return timeline_; }
    std::uint64_t scrape_bytes() const { return scrape_bytes_; }
    double last_mean_cpu() const { return last_mean_cpu_; }
    double last_mean_mem_fraction(std::uint64_t limit_bytes) const;
    SimTime last_refreshed(std::uint64_t pod_id) const;

private:
    ScrapeConfig cfg_;
    std::vector<TimelineSample> timeline_;
    std::uint64_t scrape_bytes_ = 0;
    std::uint64_t rr_cursor_ = 0;
    double last_mean_cpu_ = 0.0;

    struct Known {
        std::uint64_t id;
        double cpu;
        std::uint64_t mem;
        SimTime refreshed_at;
    };
    std::vector<Known> known_;  // sorted by id
};

}  // namespace faasim
