#include "faasim/workload.hpp"

#include <cmath>
#include <stdexcept>

#include "faasim/cluster.hpp"

namespace faasim {

void Workload::start() {
    if (spec_.mode == WorkloadMode::ClosedLoop) {
        // All connections fire at t=0, wrk style; ordering is the issue order.
        for (std::uint32_t c = 0; c < spec_.connections; ++c) {
            issue(c, SimTime{0});
        }
    } else {
        // Arrival ticks carry no request id; each tick issues one request.
        engine_.schedule(SimTime{0}, EventKind::RequestArrival, {.request = kNoId});
    }
}

std::uint64_t Workload::issue(std::uint64_t connection, SimTime now) {
    Request& req = store_.create(connection, now);
    ++counts_.issued;
    note_outstanding_change(+1, now);
    engine_.schedule(now, EventKind::RequestArrival, {.request = req.id, .arg = req.dispatch_epoch});
    engine_.schedule(now + spec_.request_timeout, EventKind::TimeoutExpiry, {.request = req.id});
    return req.id;
}

std::uint64_t Workload::on_open_arrival_tick(SimTime now) {
    std::uint64_t id = issue(open_issued_, now);
    ++open_issued_;
    SimTime next{0};
    if (spec_.arrivals == ArrivalProcess::Fixed) {
        // exact grid: arrival k at round(k / rps) seconds
        next = SimTime{static_cast<std::int64_t>(
            std::llround(static_cast<double>(open_issued_) * 1e6 / spec_.rps))};
    } else {
        double gap_s = engine_.rng().workload.next_exponential(spec_.rps);
        next = now + SimTime::from_seconds(gap_s);
        if (next <= now) next = now + SimTime{1};
    }
    if (next < spec_.duration) {
        engine_.schedule(next, EventKind::RequestArrival, {.request = kNoId});
    }
    return id;
}

void Workload::on_completed(Request& req, SimTime now) {
    if (req.outcome == Outcome::Completed) {
        throw std::logic_error("workload: duplicate response for request " +
                               std::to_string(req.id));
    }
    req.outcome = Outcome::Completed;
    req.completed_at = now;
    ++counts_.completed;
    note_outstanding_change(-1, now);
    if (spec_.mode == WorkloadMode::ClosedLoop) issue(req.connection, now);
}

void Workload::on_timed_out(Request& req, SimTime now) {
    req.outcome = Outcome::TimedOut;
    ++counts_.timed_out;
    note_outstanding_change(-1, now);
    if (spec_.mode == WorkloadMode::ClosedLoop) issue(req.connection, now);
}

bool Workload::on_refused(Request& req, SimTime now) {
    SimTime deadline = req.first_issued_at + spec_.request_timeout;
    SimTime retry_at = now + spec_.retry_delay;
    if (retry_at >= deadline) return false;  // deadline event will finalize it
    ++counts_.retries;
    ++req.retries;
    ++req.dispatch_epoch;
    engine_.schedule(retry_at, EventKind::ClientRetry,
                     {.request = req.id, .arg = req.dispatch_epoch});
    return true;
}

void Workload::on_retry_issue(Request& req, SimTime now) {
    // Fresh attempt: per-attempt timestamps reset, deadline stays anchored at
    // the first issue.
    req.issued_at = now;
    req.gateway_enqueued_at.reset();
    req.pod_enqueued_at.reset();
    req.service_start.reset();
    req.service_end.reset();
    req.outcome = Outcome::InFlight;
    ++req.dispatch_epoch;
    engine_.schedule(now, EventKind::RequestArrival, {.request = req.id, .arg = req.dispatch_epoch});
}

void Workload::note_outstanding_change(std::int64_t delta, SimTime now) {
    SimTime from = outstanding_changed_ > spec_.warmup ? outstanding_changed_ : spec_.warmup;
    if (now > from) {
        outstanding_integral_us_ +=
            static_cast<double>(outstanding_) * static_cast<double>((now - from).micros);
    }
    outstanding_ += delta;
    outstanding_changed_ = now;
    if (spec_.mode == WorkloadMode::ClosedLoop &&
        outstanding_ > static_cast<std::int64_t>(spec_.connections)) {
        throw std::logic_error("workload: closed-loop bound violated, " +
                               std::to_string(outstanding_) + " > " +
                               std::to_string(spec_.connections) + " outstanding");
    }
}

double Workload::mean_in_system() const {
    double window_us = static_cast<double>((spec_.duration - spec_.warmup).micros);
    if (window_us <= 0) return 0.0;
    double integral = outstanding_integral_us_;
    SimTime from = outstanding_changed_ > spec_.warmup ? outstanding_changed_ : spec_.warmup;
    if (spec_.duration > from) {
        integral += static_cast<double>(outstanding_) *
                    static_cast<double>((spec_.duration - from).micros);
    }
    return integral / window_us;
}

}  // namespace faasim
