#include "faasim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace faasim {

LatencyHistogram::LatencyHistogram() {
    edges_.push_back(0);  // first bucket catches everything below 1 us
    std::int64_t edge = kMinUs;
    while (edge < kMaxUs) {
        edges_.push_back(edge);
        auto next = static_cast<std::int64_t>(std::ceil(static_cast<double>(edge) * kRatio));
        edge = std::max(next, edge + 1);
    }
    edges_.push_back(kMaxUs);
    counts_.assign(edges_.size() - 1, 0);
}

std::size_t LatencyHistogram::bucket_for(std::int64_t us) const {
    if (us < kMinUs) return 0;
    if (us >= kMaxUs) return counts_.size() - 1;  // clamp to the top bucket
    auto it = std::upper_bound(edges_.begin(), edges_.end(), us);
    return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

void LatencyHistogram::record(SimTime latency) {
    std::int64_t us = latency.micros < 0 ? 0 : latency.micros;
    ++counts_[bucket_for(us)];
    if (total_ == 0) {
        min_ = max_ = SimTime{us};
    } else {
        min_ = std::min(min_, SimTime{us});
        max_ = std::max(max_, SimTime{us});
    }
    ++total_;
}

SimTime LatencyHistogram::percentile(double p) const {
    if (total_ == 0) throw std::domain_error("percentile of empty histogram");
    if (p <= 0.0 || p > 100.0) throw std::domain_error("percentile p out of range (0, 100]");
    const auto needed = static_cast<std::uint64_t>(std::ceil(p / 100.0 * static_cast<double>(total_)));
    std::uint64_t cum = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        cum += counts_[i];
        if (cum >= needed) return SimTime{edges_[i + 1]};
    }
    return SimTime{edges_.back()};
}

TimelineSample MetricsCollector::scrape(const std::vector<PodView>& pods,
                                        std::uint32_t pending_pods,
                                        std::uint64_t completions_since_last, SimTime now) {
    // Drop pods that no longer exist, keep known_ sorted by id.
    std::vector<Known> kept;
    kept.reserve(pods.size());
    for (const auto& p : pods) {
        auto it = std::lower_bound(known_.begin(), known_.end(), p.id,
                                   [](const Known& k, std::uint64_t id) { return k.id < id; });
        if (it != known_.end() && it->id == p.id) {
            kept.push_back(*it);
        } else {
            kept.push_back(Known{p.id, 0.0, p.mem_bytes, SimTime{-1}});
        }
    }
    known_ = std::move(kept);

    const std::size_t n = pods.size();
    std::size_t sampled = 0;
    if (n > 0) {
        sampled = static_cast<std::size_t>(
            std::ceil(cfg_.sampling_fraction * static_cast<double>(n)));
        sampled = std::min(sampled, n);
        // Rotating window over pod ids: with fraction f every pod is refreshed
        // within ceil(1/f) scrapes.
        for (std::size_t k = 0; k < sampled; ++k) {
            std::size_t idx = (rr_cursor_ + k) % n;
            known_[idx].cpu = pods[idx].cpu_fraction;
            known_[idx].mem = pods[idx].mem_bytes;
            known_[idx].refreshed_at = now;
        }
        rr_cursor_ = (rr_cursor_ + sampled) % n;
        scrape_bytes_ += static_cast<std::uint64_t>(sampled) * cfg_.per_pod_cost_bytes;
    }

    TimelineSample s;
    s.t = now;
    s.ready_pods = static_cast<std::uint32_t>(n);
    s.pending_pods = pending_pods;
    double cpu_sum = 0.0;
    std::uint64_t mem_sum = 0;
    for (const auto& k : known_) {
        cpu_sum += k.cpu;
        mem_sum += k.mem;
    }
    s.mean_cpu = n > 0 ? cpu_sum / static_cast<double>(n) : 0.0;
    s.total_mem_bytes = mem_sum;
    s.throughput_rps =
        static_cast<double>(completions_since_last) / cfg_.interval.seconds();
    s.scrape_bytes = scrape_bytes_;
    last_mean_cpu_ = s.mean_cpu;
    timeline_.push_back(s);
    return s;
}

double MetricsCollector::last_mean_mem_fraction(std::uint64_t limit_bytes) const {
    if (timeline_.empty() || limit_bytes == 0) return 0.0;
    const TimelineSample& last = timeline_.back();
    if (last.ready_pods == 0) return 0.0;
    double per_pod = static_cast<double>(last.total_mem_bytes) /
                     static_cast<double>(last.ready_pods);
    return std::min(1.0, per_pod / static_cast<double>(limit_bytes));
}

SimTime MetricsCollector::last_refreshed(std::uint64_t pod_id) const {
    for (const auto& k : known_) {
        if (k.id == pod_id) return k.refreshed_at;
    }
    return SimTime{-1};
}

}  // namespace faasim
