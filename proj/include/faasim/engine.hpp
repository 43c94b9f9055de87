#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "faasim/event.hpp"
#include "faasim/rng.hpp"
#include "faasim/time.hpp"

namespace faasim {

struct RunStats {
    std::uint64_t events_processed = 0;
    std::uint64_t events_scheduled = 0;
    SimTime clock{0};
    double wall_seconds = 0.0;

    std::string serialize() const;
};

// Single-threaded discrete-event core: virtual clock, (fire_at, seq)-ordered
// queue, per-subsystem RNG streams. Handlers are installed by the simulation
// that owns the engine; independent runs share no state.
class Engine {
public:
    using Handler = std::function<void(const SimEvent&)>;

    explicit Engine(std::uint64_t seed = 0) : rng_(seed) {}

    void set_handler(Handler h) { handler_ = std::move(h); }

    // Scheduling in the past is a logic error, not a modeled outcome.
    void schedule(SimTime fire_at, EventKind kind, EventPayload payload = {});

    // Processes every event with fire_at <= end. The clock finishes at `end`
    // even if the queue drains early.
    RunStats run_until(SimTime end);

    SimTime now() const { return clock_; }
    std::uint64_t pending() const { return queue_.size(); }

    RngSet& rng() { return rng_; }

private:
    EventQueue queue_;
    SimTime clock_{0};
    std::uint64_t next_seq_ = 0;
    std::uint64_t scheduled_total_ = 0;
    Handler handler_;
    RngSet rng_;
};

}  // namespace faasim
