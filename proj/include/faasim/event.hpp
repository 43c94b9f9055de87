#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "faasim/time.hpp"

namespace faasim {

enum class EventKind : std::uint8_t {
    RequestArrival,     // an attempt reaches the gateway
    PodDispatch,        // a routed request lands on a pod after the hop delay
    ServiceComplete,    // function runtime finished on a pod
    ResponseDelivered,  // response (or refusal notice) reaches the client
    TimeoutExpiry,      // client-side deadline for a logical request
    GatewayTimeout,     // gateway queue eviction deadline
    ClientRetry,        // client re-issues a refused attempt
    GatewayKick,        // pod capacity news; gateway tries to dispatch
    PodReady,           // cold start finished
    AutoscalerTick,
    MetricScrape,
    AlertFire,          // RPS alert delivered after the pipeline delay
};

inline constexpr std::uint64_t kNoId = ~0ull;

struct EventPayload {
    std::uint64_t request = kNoId;
    std::uint64_t pod = kNoId;
    std::uint32_t arg = 0;  // kind-specific (e.g. attempt number, alert step)
};

struct SimEvent {
    SimTime fire_at;
    std::uint64_t seq = 0;  // tie-break: insertion order at equal fire_at
    EventKind kind = EventKind::RequestArrival;
    EventPayload payload;
};

// Min-heap on (fire_at, seq). seq strictly increases in insertion order, so
// two events at the same instant are processed in the order they were
// scheduled.
class EventQueue {
public:
    void push(SimEvent ev) { heap_.push(ev); }

    SimEvent pop() {
        SimEvent top = heap_.top();
        heap_.pop();
        return top;
    }

    const SimEvent& peek() const { return heap_.top(); }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.fire_at != b.fire_at) return b.fire_at < a.fire_at;
            return b.seq < a.seq;
        }
    };
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
};

}  // namespace faasim
