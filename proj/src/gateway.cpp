#include "faasim/gateway.hpp"

#include <algorithm>

namespace faasim {

SimTime Gateway::hop_delay(RngSet& rng) {
    return rng.netfilter.jittered(cfg_.extra_hop_delay, cfg_.hop_jitter_fraction);
}

void Gateway::count_arrival(SimTime now) {
    arrivals_.push_back(now);
    SimTime cutoff = now - metric_horizon_;
    while (!arrivals_.empty() && arrivals_.front() <= cutoff) arrivals_.pop_front();
}

double Gateway::rps_over(SimTime from, SimTime to) const {
    if (to <= from) return 0.0;
    std::uint64_t n = 0;
    for (auto it = arrivals_.rbegin(); it != arrivals_.rend(); ++it) {
        if (*it <= from) break;
        if (*it <= to) ++n;
    }
    return static_cast<double>(n) / (to - from).seconds();
}

std::uint64_t Gateway::select_pod(const std::vector<std::uint64_t>& ready, const Cluster& cluster,
                                  RngSet& rng) {
    LbPolicy policy = cfg_.lb_policy;
    if (cfg_.export_mode == ExportMode::NodePort) {
        // Netfilter DNAT picks at random whatever the ingress rule says.
        return ready[rng.netfilter.next_below(ready.size())];
    }
    switch (policy) {
        case LbPolicy::RoundRobin: {
            for (std::uint64_t id : ready) {  // ready ids are ascending
                if (id > rr_last_) {
                    rr_last_ = id;
                    return id;
                }
            }
            rr_last_ = ready.front();
            return ready.front();
        }
        case LbPolicy::Random:
            return ready[rng.load_balancer.next_below(ready.size())];
        case LbPolicy::LeastConnection: {
            std::uint64_t best = ready.front();
            std::uint32_t best_load = cluster.pod_load(best);
            for (std::uint64_t id : ready) {
                std::uint32_t load = cluster.pod_load(id);
                if (load < best_load) {
                    best = id;
                    best_load = load;
                }
            }
            return best;
        }
    }
    return ready.front();
}

Gateway::Admit Gateway::admit(Request& req, const Cluster& cluster, SimTime now, RngSet& rng,
                              std::uint64_t& routed_pod) {
    auto ready = cluster.ready_pod_ids();
    if (ready.empty()) {
        if (activator_enabled_) {
            ++req.dispatch_epoch;
            activator_.buffered.push_back(req.id);
            activator_.scale_from_zero_pending = true;
            return Admit::Buffered;
        }
        if (cluster.model().gateway_queuing && queue_.size() < cfg_.queue_capacity) {
            ++req.dispatch_epoch;
            req.gateway_enqueued_at = now;
            queue_.push_back({req.id, req.dispatch_epoch});
            return Admit::Queued;
        }
        return Admit::Refused;
    }

    std::uint64_t pod = select_pod(ready, cluster, rng);
    if (cluster.can_accept(pod)) {
        ++req.dispatch_epoch;
        routed_pod = pod;
        return Admit::Routed;
    }
    if (cluster.model().gateway_queuing && queue_.size() < cfg_.queue_capacity) {
        ++req.dispatch_epoch;
        req.gateway_enqueued_at = now;
        queue_.push_back({req.id, req.dispatch_epoch});
        return Admit::Queued;
    }
    return Admit::Refused;
}

bool Gateway::requeue_bounced(Request& req, SimTime now) {
    if (queue_.size() >= cfg_.queue_capacity) return false;
    ++req.dispatch_epoch;
    req.gateway_enqueued_at = now;
    queue_.push_back({req.id, req.dispatch_epoch});
    return true;
}

bool Gateway::entry_live(const QueueEntry& e, const RequestStore& store) const {
    const Request& r = store.at(e.request);
    return !r.finished() && r.dispatch_epoch == e.epoch;
}

std::vector<Gateway::Dispatch> Gateway::drain(const Cluster& cluster, RequestStore& store,
                                              RngSet& rng, std::uint32_t budget) {
    std::vector<Dispatch> out;
    if (budget == 0) return out;
    auto ready = cluster.ready_pod_ids();
    if (ready.empty()) return out;

    while (out.size() < budget) {
        std::uint64_t req_id = kNoId;
        // Activator buffer first, then the gateway queue, both FIFO.
        while (!activator_.buffered.empty()) {
            std::uint64_t cand = activator_.buffered.front();
            if (store.at(cand).finished()) {
                activator_.buffered.pop_front();
                continue;
            }
            req_id = cand;
            break;
        }
        bool from_activator = req_id != kNoId;
        if (!from_activator) {
            while (!queue_.empty() && !entry_live(queue_.front(), store)) queue_.pop_front();
            if (!queue_.empty()) req_id = queue_.front().request;
        }
        if (req_id == kNoId) break;

        std::uint64_t pod = select_pod(ready, cluster, rng);
        if (!cluster.can_accept(pod)) break;

        if (from_activator) {
            activator_.buffered.pop_front();
        } else {
            queue_.pop_front();
        }
        Request& req = store.at(req_id);
        ++req.dispatch_epoch;
        out.push_back({req_id, pod});
    }
    if (activator_.buffered.empty()) activator_.scale_from_zero_pending = false;
    return out;
}

}  // namespace faasim
