#pragma once

#include <cstdint>
#include <vector>

#include "faasim/engine.hpp"
#include "faasim/request.hpp"
#include "faasim/time.hpp"

namespace faasim {

enum class WorkloadMode : std::uint8_t { ClosedLoop, OpenLoop };
enum class ArrivalProcess : std::uint8_t { Fixed, Poisson };

struct WorkloadSpec {
    WorkloadMode mode = WorkloadMode::ClosedLoop;
    std::uint32_t connections = 1;  // closed-loop concurrency (wrk -c)
    double rps = 0.0;               // open-loop arrival rate
    ArrivalProcess arrivals = ArrivalProcess::Fixed;
    SimTime duration{0};
    SimTime warmup{0};
    SimTime request_timeout = SimTime::from_seconds(10.0);
    SimTime retry_delay = SimTime::from_ms(1.0);
};

// Conservation tally over logical requests (each counted once; retries are
// attempts of the same request).
struct WorkloadCounts {
    std::uint64_t issued = 0;
    std::uint64_t completed = 0;
    std::uint64_t timed_out = 0;
    std::uint64_t dropped = 0;  // refused and never retried (retry disabled or run ended)
    std::uint64_t retries = 0;

    std::uint64_t in_flight(SimTime /*at_end*/) const {
        return issued - completed - timed_out - dropped;
    }
};

class RequestStore;

// wrk-style generator. Closed loop: `connections` requests outstanding at
// t=0, each connection re-issues on completion/timeout (and re-tries refused
// attempts after retry_delay). Open loop: one arrival every 1/rps, or
// Poisson when configured.
class Workload {
public:
    Workload(WorkloadSpec spec, Engine& engine, RequestStore& store)
        : spec_(spec), engine_(engine), store_(store) {}

    void start();

    // Issue the next logical request owned by `connection` (closed loop).
    std::uint64_t issue(std::uint64_t connection, SimTime now);

    // Open-loop arrival tick fired: issues one request now, schedules the
    // next tick, returns the new request id.
    std::uint64_t on_open_arrival_tick(SimTime now);

    void on_completed(Request& req, SimTime now);
    void on_timed_out(Request& req, SimTime now);
    // True if a retry was scheduled; false when the request is out of time
    // and is left to its deadline event.
    bool on_refused(Request& req, SimTime now);
    void on_retry_issue(Request& req, SimTime now);

    const WorkloadSpec& spec() const { return spec_; }
    const WorkloadCounts& counts() const { return counts_; }

    // Time-average of requests in system over the measurement window
    // (Little's law oracle input).
    double mean_in_system() const;
    void note_outstanding_change(std::int64_t delta, SimTime now);

private:
    WorkloadSpec spec_;
    Engine& engine_;
    RequestStore& store_;
    WorkloadCounts counts_;

    std::uint64_t open_issued_ = 0;
    std::int64_t outstanding_ = 0;
    SimTime outstanding_changed_{0};
    double outstanding_integral_us_ = 0.0;  // accumulated after warmup
};

}  // namespace faasim
