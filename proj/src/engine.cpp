#include "faasim/engine.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace faasim {

std::string RunStats::serialize() const {
    std::ostringstream os;
    os << "events_processed=" << events_processed << " events_scheduled=" << events_scheduled
       << " clock_us=" << clock.micros;
    return os.str();
}

void Engine::schedule(SimTime fire_at, EventKind kind, EventPayload payload) {
    if (fire_at < clock_) {
        throw std::logic_error("engine: schedule at t=" + std::to_string(fire_at.micros) +
                               "us is in the past (clock=" + std::to_string(clock_.micros) + "us)");
    }
    queue_.push(SimEvent{fire_at, next_seq_++, kind, payload});
    ++scheduled_total_;
}

RunStats Engine::run_until(SimTime end) {
    auto wall_start = std::chrono::steady_clock::now();
    RunStats stats;
    while (!queue_.empty() && queue_.peek().fire_at <= end) {
        SimEvent ev = queue_.pop();
        clock_ = ev.fire_at;
        if (handler_) handler_(ev);
        ++stats.events_processed;
    }
    clock_ = end;
    stats.clock = clock_;
    stats.events_scheduled = scheduled_total_;
    stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return stats;
}

}  // namespace faasim
