#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "faasim/cluster.hpp"
#include "faasim/request.hpp"
#include "faasim/rng.hpp"
#include "faasim/time.hpp"

namespace faasim {

enum class LbPolicy : std::uint8_t { RoundRobin, Random, LeastConnection };
enum class ExportMode : std::uint8_t { Ingress, NodePort };

struct GatewayConfig {
    std::uint32_t queue_capacity = 50'000;
    SimTime queue_timeout = SimTime::from_seconds(10.0);
    LbPolicy lb_policy = LbPolicy::RoundRobin;
    ExportMode export_mode = ExportMode::Ingress;
    SimTime extra_hop_delay = SimTime::from_ms(0.05);
    double hop_jitter_fraction = 0.0;  // netfilter/overlay variance on the hop
};

struct ActivatorState {
    std::deque<std::uint64_t> buffered;
    bool scale_from_zero_pending = false;
};

// Service-exporting front end: bounded FIFO queue (for the archetypes that
// queue at the gateway), pluggable pod selection, and the scale-from-zero
// activator buffer. The gateway sees pod state as it is *now*; requests it
// has already put on the wire are invisible, so concurrent dispatches can
// race for the same slot and lose at the pod.
class Gateway {
public:
    enum class Admit : std::uint8_t { Routed, Queued, Buffered, Refused };

    Gateway(GatewayConfig cfg, bool activator_enabled)
        : cfg_(cfg), activator_enabled_(activator_enabled) {}

    // Admission for a request arriving from a client. On Routed the caller
    // owns the hop to `routed_pod`.
    Admit admit(Request& req, const Cluster& cluster, SimTime now, RngSet& rng,
                std::uint64_t& routed_pod);

    // Re-queue a request the pod refused after it was already on the wire
    // (dual-queue archetypes retry upstream dispatch internally). False when
    // the gateway queue is full and the refusal must surface to the client.
    bool requeue_bounced(Request& req, SimTime now);

    // One dispatch opportunity: pops up to `budget` waiting requests that a
    // selected pod can take right now. Activator buffer drains first, FIFO.
    struct Dispatch {
        std::uint64_t request;
        std::uint64_t pod;
    };
    std::vector<Dispatch> drain(const Cluster& cluster, RequestStore& store, RngSet& rng,
                                std::uint32_t budget);

    // NodePort traffic is DNAT-balanced at random by netfilter regardless of
    // the configured policy.
    std::uint64_t select_pod(const std::vector<std::uint64_t>& ready, const Cluster& cluster,
                             RngSet& rng);

    std::size_t queue_size() const { return queue_.size(); }
    const GatewayConfig& config() const { return cfg_; }
    ActivatorState& activator() { return activator_; }

    SimTime hop_delay(RngSet& rng);

    // Attempt-arrival bookkeeping for the RPS metric. Entries older than the
    // metric horizon are dropped as they stop being observable.
    void set_metric_horizon(SimTime horizon) { metric_horizon_ = horizon; }
    void count_arrival(SimTime now);
    double rps_over(SimTime from, SimTime to) const;

private:
    struct QueueEntry {
        std::uint64_t request;
        std::uint32_t epoch;
    };
    bool entry_live(const QueueEntry& e, const RequestStore& store) const;

    GatewayConfig cfg_;
    bool activator_enabled_;
    std::deque<QueueEntry> queue_;
    ActivatorState activator_;
    std::uint64_t rr_last_ = 0;
    std::deque<SimTime> arrivals_;
    SimTime metric_horizon_ = SimTime::from_seconds(5.0);
};

}  // namespace faasim
