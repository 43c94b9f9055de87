#pragma once

#include <cstdint>
#include <optional>

#include "faasim/time.hpp"

namespace faasim {

enum class Outcome : std::uint8_t {
    InFlight,
    Completed,
    TimedOut,
    DroppedAtIngress,
    DroppedAtPod,
};

// One HTTP invocation's lifecycle. A logical request keeps its id across
// client retries; issued_at moves to the latest attempt (latency and the
// per-attempt timestamps describe the attempt that finally went through),
// while the 10s client deadline stays anchored at first_issued_at.
struct Request {
    std::uint64_t id = 0;
    std::uint64_t connection = 0;  // owning closed-loop connection
    std::uint32_t retries = 0;

    SimTime first_issued_at{0};
    SimTime issued_at{0};
    std::optional<SimTime> gateway_enqueued_at;
    std::optional<SimTime> pod_enqueued_at;  // arrival at the pod
    std::optional<SimTime> service_start;
    std::optional<SimTime> service_end;
    std::optional<SimTime> completed_at;

    Outcome outcome = Outcome::InFlight;

    // routing state
    std::uint64_t pod = ~0ull;           // pod currently serving/holding it
    std::uint32_t dispatch_epoch = 0;    // invalidates stale queue entries
    bool at_platform = false;            // between gateway arrival and response
    SimTime respond_out_planned{0};      // drawn when service begins

    bool finished() const { return outcome != Outcome::InFlight; }
};

}  // namespace faasim
