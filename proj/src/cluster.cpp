#include "faasim/cluster.hpp"

#include <algorithm>
#include <stdexcept>

namespace faasim {

ExecutionModel archetype_model(Archetype a) {
    ExecutionModel m;
    m.archetype = a;
    switch (a) {
        case Archetype::WarmMultiWorker:
            m.workers = 1;
            m.pod_queue_capacity = 50'000;
            m.gateway_queuing = false;
            m.single_process = false;
            break;
        case Archetype::WatchdogProxy:
            m.workers = 1;  // fixed: one of-watchdog + one function process
            m.pod_queue_capacity = 50'000;
            m.gateway_queuing = true;
            m.single_process = true;
            break;
        case Archetype::SidecarQueue:
            m.workers = 1;
            m.pod_queue_capacity = 50'000;
            m.gateway_queuing = true;
            m.single_process = false;
            break;
        case Archetype::ForkNoQueue:
            m.workers = 1;  // fixed
            m.pod_queue_capacity = std::nullopt;
            m.gateway_queuing = false;
            m.single_process = true;
            break;
        case Archetype::Custom:
            break;
    }
    return m;
}

ServiceProfile archetype_service_profile(Archetype a) {
    switch (a) {
        case Archetype::WarmMultiWorker:
            return {SimTime::from_us(630), SimTime::from_us(1), SimTime::from_us(540), {}};
        case Archetype::WatchdogProxy:
            return {SimTime::from_us(1320), SimTime::from_us(1), SimTime::from_us(930), {}};
        case Archetype::SidecarQueue:
            return {SimTime::from_us(1300), SimTime::from_us(1), SimTime::from_us(620), {}};
        case Archetype::ForkNoQueue:
            // forwarding already embodies the per-request fork
            return {SimTime::from_us(4960), SimTime::from_us(1), SimTime::from_us(2630), {}};
        case Archetype::Custom:
            return {};
    }
    return {};
}

ColdStartProfile archetype_cold_start(Archetype a) {
    switch (a) {
        case Archetype::WarmMultiWorker:
            return {SimTime{0}};  // warm-start platform
        default:
            return {SimTime::from_seconds(2.0)};
    }
}

ResourceModel archetype_resources(Archetype a) {
    ResourceModel r;
    switch (a) {
        case Archetype::WarmMultiWorker:
            r.cpu_weight = 1.2;
            break;
        case Archetype::SidecarQueue:
            r.cpu_weight = 1.0;
            r.mem_base_bytes = 64ull << 20;  // queue-proxy sidecar overhead
            break;
        case Archetype::ForkNoQueue:
            // refused connections burn no pod CPU; forking is mostly wait
            r.cpu_weight = 0.45;
            break;
        default:
            break;
    }
    return r;
}

SimTime Cluster::jittered(SimTime base) {
    return engine_.rng().jitter.jittered(base, service_jitter_);
}

std::uint64_t Cluster::add_ready_pod(SimTime now) {
    PodInstance p;
    p.id = pods_.size() + 1;
    p.state = PodState::Ready;
    p.ready_at = now;
    p.busy_changed = now;
    p.window_anchor = now;
    pods_.push_back(p);
    return p.id;
}

std::optional<std::uint64_t> Cluster::spawn_pod(SimTime now) {
    if (ready_count() + pending_count() >= max_replicas_) return std::nullopt;
    PodInstance p;
    p.id = pods_.size() + 1;
    p.state = PodState::ColdStarting;
    p.ready_at = now + cold_.cold_start_delay;
    p.busy_changed = now;
    p.window_anchor = now;
    pods_.push_back(p);
    engine_.schedule(p.ready_at, EventKind::PodReady, {.pod = p.id});
    return p.id;
}

void Cluster::handle_pod_ready(std::uint64_t pod_id, SimTime now) {
    PodInstance& p = pod_mut(pod_id);
    if (p.state != PodState::ColdStarting) return;  // cancelled while starting
    p.state = PodState::Ready;
    p.ready_at = now;
    p.busy_changed = now;
    p.window_anchor = now;
    if (on_capacity_) on_capacity_(pod_id, now);
}

bool Cluster::can_accept(std::uint64_t pod_id) const {
    const PodInstance& p = pod(pod_id);
    if (p.state != PodState::Ready) return false;
    if (p.busy_workers < model_.workers) return true;
    return model_.pod_queue_capacity.has_value() &&
           p.queue.size() < *model_.pod_queue_capacity;
}

std::uint32_t Cluster::free_capacity(std::uint64_t pod_id) const {
    const PodInstance& p = pod(pod_id);
    if (p.state != PodState::Ready) return 0;
    std::uint32_t free = model_.workers - p.busy_workers;
    if (model_.pod_queue_capacity.has_value()) {
        auto cap = *model_.pod_queue_capacity;
        auto used = static_cast<std::uint32_t>(p.queue.size());
        free += cap > used ? cap - used : 0;
    }
    return free;
}

void Cluster::settle_busy(PodInstance& p, SimTime now) {
    p.busy_acc_us += static_cast<std::int64_t>(p.busy_workers) * (now - p.busy_changed).micros;
    p.busy_changed = now;
}

void Cluster::begin_service(PodInstance& p, Request& req, SimTime now) {
    if (p.busy_workers >= model_.workers) {
        throw std::logic_error("cluster: worker over-commit on pod " + std::to_string(p.id));
    }
    settle_busy(p, now);
    ++p.busy_workers;
    SimTime forward = jittered(profile_.forward_in);
    if (model_.forks_per_request()) forward += jittered(profile_.fork_cost);
    SimTime runtime = jittered(profile_.runtime);
    SimTime respond = jittered(profile_.respond_out);

    req.pod = p.id;
    req.service_start = now + forward;
    req.service_end = *req.service_start + runtime;
    req.respond_out_planned = respond;
    engine_.schedule(*req.service_end, EventKind::ServiceComplete, {.request = req.id, .pod = p.id});
}

Cluster::Accept Cluster::pod_accept(std::uint64_t pod_id, Request& req, SimTime now) {
    PodInstance& p = pod_mut(pod_id);
    if (p.state != PodState::Ready) {
        throw std::logic_error("cluster: pod_accept on non-ready pod " + std::to_string(pod_id));
    }
    req.pod_enqueued_at = now;
    if (p.busy_workers < model_.workers) {
        begin_service(p, req, now);
        return Accept::Started;
    }
    if (model_.pod_queue_capacity.has_value() && p.queue.size() < *model_.pod_queue_capacity) {
        p.queue.push_back({req.id, req.dispatch_epoch});
        return Accept::Enqueued;
    }
    return Accept::Refused;
}

void Cluster::pod_complete(std::uint64_t pod_id, Request& req, SimTime now) {
    PodInstance& p = pod_mut(pod_id);
    req.service_end = now;
    if (!model_.single_process) free_worker_and_pull(p, now);
}

void Cluster::release_worker(std::uint64_t pod_id, SimTime now) {
    free_worker_and_pull(pod_mut(pod_id), now);
}

void Cluster::free_worker_and_pull(PodInstance& p, SimTime now) {
    settle_busy(p, now);
    --p.busy_workers;
    // Pull the next live queue entry, discarding entries whose request timed
    // out or was re-routed since it was enqueued.
    while (!p.queue.empty()) {
        auto entry = p.queue.front();
        p.queue.pop_front();
        Request& next = store_.at(entry.request);
        if (next.finished() || next.dispatch_epoch != entry.epoch) continue;
        begin_service(p, next, now);
        break;
    }
    if (on_capacity_ && p.state == PodState::Ready) on_capacity_(p.id, now);
    maybe_finish_termination(p);
}

void Cluster::maybe_finish_termination(PodInstance& p) {
    if (p.state != PodState::Terminating || p.busy_workers > 0) return;
    for (const auto& entry : p.queue) {
        const Request& r = store_.at(entry.request);
        if (!r.finished() && r.dispatch_epoch == entry.epoch) return;  // still draining
    }
    p.queue.clear();
    p.state = PodState::Terminated;
}

void Cluster::apply_desired(std::uint32_t desired, SimTime now) {
    std::uint32_t active = ready_count() + pending_count();
    if (desired > active) {
        std::uint32_t to_spawn = desired - active;
        for (std::uint32_t i = 0; i < to_spawn; ++i) {
            if (!spawn_pod(now)) break;  // budget clamp
        }
        return;
    }
    // Drain the surplus, newest first; pods still cold-starting go first since
    // they never took traffic.
    std::uint32_t surplus = active - desired;
    for (auto it = pods_.rbegin(); it != pods_.rend() && surplus > 0; ++it) {
        if (it->state == PodState::ColdStarting) {
            it->state = PodState::Terminated;
            --surplus;
        }
    }
    for (auto it = pods_.rbegin(); it != pods_.rend() && surplus > 0; ++it) {
        if (it->state == PodState::Ready) {
            it->state = PodState::Terminating;
            --surplus;
            maybe_finish_termination(*it);
        }
    }
}

std::vector<Cluster::ResourceSample> Cluster::sample_resources(SimTime now) {
    std::vector<ResourceSample> out;
    for (PodInstance& p : pods_) {
        if (p.state != PodState::Ready) continue;
        settle_busy(p, now);
        double elapsed_us = static_cast<double>((now - p.window_anchor).micros);
        double raw = 0.0;
        if (elapsed_us > 0) {
            raw = static_cast<double>(p.busy_acc_us) /
                  (elapsed_us * static_cast<double>(model_.workers));
        }
        // A pod cgroup cannot report more than its allocation.
        double cpu = std::min(1.0, raw * resources_.cpu_weight);
        std::uint64_t mem = resources_.mem_base_bytes +
                            static_cast<std::uint64_t>(p.queue.size()) * resources_.mem_per_queued_bytes;
        out.push_back({p.id, cpu, mem});
        p.busy_acc_us = 0;
        p.window_anchor = now;
    }
    return out;
}

std::uint32_t Cluster::ready_count() const {
    std::uint32_t n = 0;
    for (const auto& p : pods_) n += p.state == PodState::Ready ? 1 : 0;
    return n;
}

std::uint32_t Cluster::pending_count() const {
    std::uint32_t n = 0;
    for (const auto& p : pods_) n += p.state == PodState::ColdStarting ? 1 : 0;
    return n;
}

std::vector<std::uint64_t> Cluster::ready_pod_ids() const {
    std::vector<std::uint64_t> ids;
    for (const auto& p : pods_) {
        if (p.state == PodState::Ready) ids.push_back(p.id);
    }
    return ids;
}

}  // namespace faasim
