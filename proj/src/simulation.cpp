#include "faasim/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace faasim {

namespace {
constexpr std::uint32_t kArgSuccess = 0;
constexpr std::uint32_t kArgRefusedIngress = 1;
constexpr std::uint32_t kArgRefusedPod = 2;
constexpr std::uint32_t kArgAlertUp = 1;
constexpr std::uint32_t kArgAlertDown = 2;
}  // namespace

Simulation::Simulation(Scenario scenario)
    : scn_(std::move(scenario)),
      engine_(scn_.seed),
      cluster_(scn_.model, scn_.service, scn_.cluster.cold_start, scn_.cluster.resources,
               scn_.cluster.service_jitter_fraction, scn_.cluster.max_replicas, engine_, store_),
      gateway_(scn_.gateway, scn_.model.archetype == Archetype::SidecarQueue &&
                                 std::holds_alternative<KpaConfig>(scn_.autoscaler)),
      workload_(scn_.workload, engine_, store_),
      metrics_(scn_.scrape) {
    cluster_.set_capacity_listener([this](std::uint64_t, SimTime now) { schedule_kick(now); });
    if (auto* r = std::get_if<RpsAlertConfig>(&scn_.autoscaler)) {
        gateway_.set_metric_horizon(r->alert_window + r->scrape_interval +
                                    SimTime::from_seconds(1));
    } else if (auto* k = std::get_if<KpaConfig>(&scn_.autoscaler)) {
        gateway_.set_metric_horizon(k->stable_window + SimTime::from_seconds(1));
    }
}

void Simulation::schedule_kick(SimTime now) {
    // One pending kick at a time; it re-reads queue and capacity when it fires.
    if (kick_pending_) return;
    if (gateway_.queue_size() == 0 && gateway_.activator().buffered.empty()) return;
    kick_pending_ = true;
    engine_.schedule(now, EventKind::GatewayKick, {});
}

void Simulation::record_pod_trace(SimTime now) {
    std::uint32_t ready = cluster_.ready_count();
    peak_ready_ = std::max(peak_ready_, ready);
    if (!pod_trace_.empty() && pod_trace_.back().ready == ready) return;
    pod_trace_.push_back({now, ready});
}

ResultBundle Simulation::run() {
    engine_.set_handler([this](const SimEvent& ev) { dispatch(ev); });

    for (std::uint32_t i = 0; i < scn_.cluster.initial_replicas; ++i) {
        cluster_.add_ready_pod(SimTime{0});
    }
    record_pod_trace(SimTime{0});

    // Autoscaler ticks go in before the workload so a tick at t=0 samples the
    // pre-arrival state.
    if (std::holds_alternative<KpaConfig>(scn_.autoscaler)) {
        engine_.schedule(SimTime{0}, EventKind::AutoscalerTick, {});
    } else if (auto* h = std::get_if<HpaConfig>(&scn_.autoscaler)) {
        engine_.schedule(h->sync_period, EventKind::AutoscalerTick, {});
    } else if (auto* r = std::get_if<RpsAlertConfig>(&scn_.autoscaler)) {
        engine_.schedule(r->alert_window, EventKind::AutoscalerTick, {});
    }
    as_state_.current_desired = scn_.cluster.initial_replicas;

    engine_.schedule(scn_.scrape.interval, EventKind::MetricScrape, {});
    workload_.start();

    RunStats rs = engine_.run_until(scn_.duration);

    ResultBundle bundle;
    bundle.summary = summarize(rs);
    bundle.timeline = metrics_.timeline();
    bundle.histogram = latency_;
    return bundle;
}

void Simulation::dispatch(const SimEvent& ev) {
    switch (ev.kind) {
        case EventKind::RequestArrival: handle_arrival(ev); break;
        case EventKind::PodDispatch: handle_pod_dispatch(ev); break;
        case EventKind::ServiceComplete: handle_service_complete(ev); break;
        case EventKind::ResponseDelivered: handle_response(ev); break;
        case EventKind::TimeoutExpiry: handle_timeout(ev); break;
        case EventKind::GatewayTimeout: handle_gateway_timeout(ev); break;
        case EventKind::ClientRetry: {
            if (ev.payload.request == kNoId) break;
            Request& req = store_.at(ev.payload.request);
            if (req.finished() || req.dispatch_epoch != ev.payload.arg) break;
            workload_.on_retry_issue(req, engine_.now());
            break;
        }
        case EventKind::GatewayKick: handle_kick(ev); break;
        case EventKind::PodReady: handle_pod_ready(ev); break;
        case EventKind::AutoscalerTick: handle_autoscaler_tick(ev); break;
        case EventKind::MetricScrape: handle_scrape(ev); break;
        case EventKind::AlertFire: handle_alert(ev); break;
    }
}

void Simulation::handle_arrival(const SimEvent& ev) {
    SimTime now = engine_.now();
    if (ev.payload.request == kNoId) {
        workload_.on_open_arrival_tick(now);  // issues the request; its own arrival follows
        return;
    }
    Request& req = store_.at(ev.payload.request);
    if (req.finished() || req.dispatch_epoch != ev.payload.arg) return;

    gateway_.count_arrival(now);
    ++platform_outstanding_;
    req.at_platform = true;

    std::uint64_t pod = kNoId;
    switch (gateway_.admit(req, cluster_, now, engine_.rng(), pod)) {
        case Gateway::Admit::Routed:
            engine_.schedule(now + gateway_.hop_delay(engine_.rng()), EventKind::PodDispatch,
                             {.request = req.id, .pod = pod, .arg = req.dispatch_epoch});
            break;
        case Gateway::Admit::Queued:
            engine_.schedule(now + gateway_.config().queue_timeout, EventKind::GatewayTimeout,
                             {.request = req.id, .arg = req.dispatch_epoch});
            break;
        case Gateway::Admit::Buffered:
            // Scale-from-zero: the activator pokes the autoscaler right away.
            if (cluster_.ready_count() + cluster_.pending_count() == 0) {
                apply_desired_recorded(std::max<std::uint32_t>(1, as_state_.current_desired), now);
            }
            break;
        case Gateway::Admit::Refused:
            refuse_to_client(req, now, /*at_pod=*/false);
            break;
    }
}

void Simulation::refuse_to_client(Request& req, SimTime now, bool at_pod) {
    if (at_pod) {
        ++drop_events_pod_;
    } else {
        ++drop_events_ingress_;
    }
    engine_.schedule(now + gateway_.hop_delay(engine_.rng()), EventKind::ResponseDelivered,
                     {.request = req.id, .arg = at_pod ? kArgRefusedPod : kArgRefusedIngress});
}

void Simulation::handle_pod_dispatch(const SimEvent& ev) {
    SimTime now = engine_.now();
    Request& req = store_.at(ev.payload.request);
    if (req.finished() || req.dispatch_epoch != ev.payload.arg) return;

    std::uint64_t pod = ev.payload.pod;
    bool accepted_state = cluster_.pod_state(pod) == PodState::Ready;
    Cluster::Accept result =
        accepted_state ? cluster_.pod_accept(pod, req, now) : Cluster::Accept::Refused;
    if (result != Cluster::Accept::Refused) return;

    // The pod state moved while the request was on the wire. Dual-queue
    // archetypes park it back in the gateway queue; the rest refuse outright.
    if (scn_.model.gateway_queuing && gateway_.requeue_bounced(req, now)) {
        ++bounces_;
        engine_.schedule(now + gateway_.config().queue_timeout, EventKind::GatewayTimeout,
                         {.request = req.id, .arg = req.dispatch_epoch});
        return;
    }
    refuse_to_client(req, now, /*at_pod=*/true);
}

void Simulation::handle_service_complete(const SimEvent& ev) {
    SimTime now = engine_.now();
    Request& req = store_.at(ev.payload.request);
    cluster_.pod_complete(ev.payload.pod, req, now);
    engine_.schedule(now + req.respond_out_planned, EventKind::ResponseDelivered,
                     {.request = req.id, .pod = ev.payload.pod, .arg = kArgSuccess});
}

void Simulation::finalize_outstanding(Request& req) {
    if (req.at_platform) {
        --platform_outstanding_;
        req.at_platform = false;
    }
}

void Simulation::handle_response(const SimEvent& ev) {
    SimTime now = engine_.now();
    Request& req = store_.at(ev.payload.request);

    if (ev.payload.arg == kArgSuccess) {
        // The response has left the pod; single-process models only now give
        // the worker back, whatever the client did in the meantime.
        if (scn_.model.single_process) cluster_.release_worker(ev.payload.pod, now);
        if (req.outcome == Outcome::TimedOut) return;  // client gave up
        finalize_outstanding(req);
        workload_.on_completed(req, now);
        ++completions_since_scrape_;
        if (now > scn_.warmup) {
            ++measured_completions_;
            SimTime lat = now - req.issued_at;
            latency_.record(lat);
            latency_sum_us_ += static_cast<double>(lat.micros);
        }
        return;
    }

    // Refusal notice.
    if (req.outcome != Outcome::InFlight) return;
    finalize_outstanding(req);
    workload_.on_refused(req, now);
    // Not retriable: the request runs out its client deadline.
}

void Simulation::handle_timeout(const SimEvent& ev) {
    Request& req = store_.at(ev.payload.request);
    if (req.finished()) return;
    finalize_outstanding(req);
    workload_.on_timed_out(req, engine_.now());
}

void Simulation::handle_gateway_timeout(const SimEvent& ev) {
    Request& req = store_.at(ev.payload.request);
    if (req.finished() || req.dispatch_epoch != ev.payload.arg) return;  // left the queue
    finalize_outstanding(req);
    workload_.on_timed_out(req, engine_.now());
}

void Simulation::handle_kick(const SimEvent&) {
    SimTime now = engine_.now();
    kick_pending_ = false;
    std::uint32_t budget = 0;
    for (std::uint64_t id : cluster_.ready_pod_ids()) budget += cluster_.free_capacity(id);
    if (budget == 0) return;
    auto dispatches = gateway_.drain(cluster_, store_, engine_.rng(), budget);
    for (const auto& d : dispatches) {
        Request& req = store_.at(d.request);
        engine_.schedule(now + gateway_.hop_delay(engine_.rng()), EventKind::PodDispatch,
                         {.request = req.id, .pod = d.pod, .arg = req.dispatch_epoch});
    }
}

void Simulation::handle_pod_ready(const SimEvent& ev) {
    cluster_.handle_pod_ready(ev.payload.pod, engine_.now());
    record_pod_trace(engine_.now());
}

void Simulation::apply_desired_recorded(std::uint32_t desired, SimTime now) {
    std::uint32_t before = cluster_.ready_count() + cluster_.pending_count();
    cluster_.apply_desired(desired, now);
    std::uint32_t after = cluster_.ready_count() + cluster_.pending_count();
    if (after > before) {
        scale_actions_.push_back({now, after - before});
        as_state_.last_action_at = now;
    }
    record_pod_trace(now);
}

void Simulation::handle_autoscaler_tick(const SimEvent&) {
    SimTime now = engine_.now();
    if (auto* h = std::get_if<HpaConfig>(&scn_.autoscaler)) {
        engine_.schedule(now + h->sync_period, EventKind::AutoscalerTick, {});
        double metric = 0.0;
        if (h->metric == HpaMetric::Cpu) {
            metric = metrics_.last_mean_cpu();
        } else {
            metric = metrics_.last_mean_mem_fraction(scn_.cluster.resources.mem_limit_bytes);
        }
        std::uint32_t desired =
            hpa_desired(*h, cluster_.ready_count(), metric, as_state_.current_desired);
        if (desired != as_state_.current_desired) {
            as_state_.current_desired = desired;
            apply_desired_recorded(desired, now);
        }
    } else if (auto* k = std::get_if<KpaConfig>(&scn_.autoscaler)) {
        engine_.schedule(now + k->tick, EventKind::AutoscalerTick, {});
        double sample = 0.0;
        if (k->metric == KpaMetric::Concurrency) {
            sample = static_cast<double>(platform_outstanding_);
        } else {
            sample = gateway_.rps_over(now - k->tick, now);
        }
        std::uint32_t desired = kpa_desired(*k, as_state_, sample, now);
        if (desired != as_state_.current_desired) {
            as_state_.current_desired = desired;
            apply_desired_recorded(desired, now);
        }
    } else if (auto* r = std::get_if<RpsAlertConfig>(&scn_.autoscaler)) {
        engine_.schedule(now + r->alert_window, EventKind::AutoscalerTick, {});
        // AlertManager reads what the last scrape made visible.
        SimTime visible{(now.micros / r->scrape_interval.micros) * r->scrape_interval.micros};
        double rps = gateway_.rps_over(visible - r->alert_window, visible);
        RpsAlertDecision d = rps_alert_evaluate(*r, as_state_, rps, as_state_.current_desired);
        if (d.fire) {
            engine_.schedule(now + r->pipeline_delay, EventKind::AlertFire,
                             {.arg = d.step > 0 ? kArgAlertUp : kArgAlertDown});
        }
    }
}

void Simulation::handle_alert(const SimEvent& ev) {
    auto* r = std::get_if<RpsAlertConfig>(&scn_.autoscaler);
    if (!r) return;
    SimTime now = engine_.now();
    std::uint32_t step = rps_alert_step(*r);
    std::uint32_t cur = as_state_.current_desired;
    std::uint32_t desired = cur;
    if (ev.payload.arg == kArgAlertUp) {
        desired = std::min(cur + step, r->max_replicas);
    } else if (cur > r->min_replicas) {
        desired = cur - std::min(step, cur - r->min_replicas);
    }
    if (desired != cur) {
        as_state_.current_desired = desired;
        apply_desired_recorded(desired, now);
    }
}

void Simulation::handle_scrape(const SimEvent&) {
    SimTime now = engine_.now();
    engine_.schedule(now + scn_.scrape.interval, EventKind::MetricScrape, {});
    auto samples = cluster_.sample_resources(now);
    std::vector<MetricsCollector::PodView> views;
    views.reserve(samples.size());
    for (const auto& s : samples) views.push_back({s.id, s.cpu_fraction, s.mem_bytes});
    metrics_.scrape(views, cluster_.pending_count(), completions_since_scrape_, now);
    completions_since_scrape_ = 0;
    record_pod_trace(now);
}

RunSummary Simulation::summarize(const RunStats& rs) {
    RunSummary s;
    s.scenario = scn_.name;
    s.seed = scn_.seed;
    s.duration_s = scn_.duration.seconds();
    s.warmup_s = scn_.warmup.seconds();

    const WorkloadCounts& w = workload_.counts();
    s.issued = w.issued;
    s.completed = w.completed;
    s.timed_out = w.timed_out;
    s.dropped = w.dropped;
    // Independent tally over every request's final outcome; must agree with
    // the event-driven counters for conservation to hold.
    std::uint64_t scan_completed = 0, scan_timed_out = 0, scan_dropped = 0, scan_in_flight = 0;
    for (const Request& r : store_) {
        switch (r.outcome) {
            case Outcome::Completed: ++scan_completed; break;
            case Outcome::TimedOut: ++scan_timed_out; break;
            case Outcome::DroppedAtIngress:
            case Outcome::DroppedAtPod: ++scan_dropped; break;
            case Outcome::InFlight: ++scan_in_flight; break;
        }
    }
    s.in_flight = scan_in_flight;
    s.outcome_scan_matches = store_.size() == w.issued && scan_completed == w.completed &&
                             scan_timed_out == w.timed_out && scan_dropped == w.dropped;
    s.drop_events_ingress = drop_events_ingress_;
    s.drop_events_pod = drop_events_pod_;
    s.retries = w.retries;

    s.measured_completions = measured_completions_;
    double window_s = (scn_.duration - scn_.warmup).seconds();
    s.throughput_rps =
        window_s > 0 ? static_cast<double>(measured_completions_) / window_s : 0.0;

    std::vector<double> interval_tputs;
    for (const auto& row : metrics_.timeline()) {
        if (row.t > scn_.warmup) interval_tputs.push_back(row.throughput_rps);
    }
    if (!interval_tputs.empty()) {
        double sum = 0.0;
        for (double v : interval_tputs) sum += v;
        double mean = sum / static_cast<double>(interval_tputs.size());
        double ss = 0.0;
        for (double v : interval_tputs) ss += (v - mean) * (v - mean);
        s.throughput_interval_mean = mean;
        s.throughput_interval_std =
            interval_tputs.size() > 1
                ? std::sqrt(ss / static_cast<double>(interval_tputs.size() - 1))
                : 0.0;
    }

    if (latency_.total() > 0) {
        s.mean_latency_us = latency_sum_us_ / static_cast<double>(latency_.total());
        s.p50_us = latency_.percentile(50).micros;
        s.p90_us = latency_.percentile(90).micros;
        s.p99_us = latency_.percentile(99).micros;
        s.p999_us = latency_.percentile(99.9).micros;
    }
    s.mean_in_system = workload_.mean_in_system();
    s.peak_ready_pods = peak_ready_;
    s.total_scrape_bytes = metrics_.scrape_bytes();
    s.events_processed = rs.events_processed;
    return s;
}

ResultBundle run_scenario(const Scenario& scenario) {
    Simulation sim(scenario);
    return sim.run();
}

}  // namespace faasim
