#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "faasim/engine.hpp"
#include "faasim/request.hpp"
#include "faasim/rng.hpp"
#include "faasim/time.hpp"

namespace faasim {

enum class Archetype : std::uint8_t {
    WarmMultiWorker,  // event listener + worker processes (Nuclio)
    WatchdogProxy,    // single of-watchdog process (OpenFaaS)
    SidecarQueue,     // queue-proxy sidecar + function container (Knative)
    ForkNoQueue,      // fork per request, no pod queue (Kubeless)
    Custom,
};

enum class WatchdogMode : std::uint8_t { Http, ForkPerRequest };

// How a pod processes requests. `single_process` means the forwarding and
// response work run on the same process as the function, so they occupy the
// worker; otherwise the listener/sidecar pipelines them and the worker is
// held only from claim until the function runtime ends.
struct ExecutionModel {
    Archetype archetype = Archetype::Custom;
    std::uint32_t workers = 1;
    std::optional<std::uint32_t> pod_queue_capacity = 50'000;  // nullopt: no pod queue
    WatchdogMode watchdog_mode = WatchdogMode::Http;
    bool gateway_queuing = false;
    bool single_process = false;

    bool forks_per_request() const {
        return archetype == Archetype::WatchdogProxy && watchdog_mode == WatchdogMode::ForkPerRequest;
    }
};

// Per-request delay stages inside the pod:
// arrival -> forward_in -> runtime -> respond_out -> response leaves the pod.
struct ServiceProfile {
    SimTime forward_in{0};
    SimTime runtime{0};
    SimTime respond_out{0};
    SimTime fork_cost{0};  // added to forward_in when the model forks per request

    SimTime in_pod_total() const { return forward_in + runtime + respond_out; }
};

struct ColdStartProfile {
    SimTime cold_start_delay{0};
};

struct ResourceModel {
    double cpu_weight = 1.0;
    std::uint64_t mem_base_bytes = 32ull << 20;
    std::uint64_t mem_per_queued_bytes = 64ull << 10;
    std::uint64_t mem_limit_bytes = 128ull << 20;  // per-pod allocation for memory HPA
};

enum class PodState : std::uint8_t { ColdStarting, Ready, Terminating, Terminated };

struct PodInstance {
    std::uint64_t id = 0;
    PodState state = PodState::ColdStarting;
    std::uint32_t busy_workers = 0;
    struct QueueEntry {
        std::uint64_t request;
        std::uint32_t epoch;
    };
    std::deque<QueueEntry> queue;
    SimTime ready_at{0};

    // worker-seconds integral for CPU sampling
    std::int64_t busy_acc_us = 0;
    SimTime busy_changed{0};
    SimTime window_anchor{0};

    std::uint32_t load() const { return busy_workers + static_cast<std::uint32_t>(queue.size()); }
};

class RequestStore {
public:
    Request& create(std::uint64_t connection, SimTime now) {
        Request& r = reqs_.emplace_back();
        r.id = reqs_.size() - 1;
        r.connection = connection;
        r.first_issued_at = now;
        r.issued_at = now;
        return r;
    }
    Request& at(std::uint64_t id) { return reqs_[id]; }
    const Request& at(std::uint64_t id) const { return reqs_[id]; }
    std::size_t size() const { return reqs_.size(); }
    auto begin() const { return reqs_.begin(); }
    auto end() const { return reqs_.end(); }

private:
    std::deque<Request> reqs_;
};

// The pod fleet for one function. Owns per-pod service scheduling and the
// cold-start/terminate lifecycle; routing stays in the gateway.
class Cluster {
public:
    enum class Accept : std::uint8_t { Started, Enqueued, Refused };

    Cluster(ExecutionModel model, ServiceProfile profile, ColdStartProfile cold,
            ResourceModel resources, double service_jitter, std::uint32_t max_replicas,
            Engine& engine, RequestStore& store)
        : model_(model),
          profile_(profile),
          cold_(cold),
          resources_(resources),
          service_jitter_(service_jitter),
          max_replicas_(max_replicas),
          engine_(engine),
          store_(store) {}

    // Fired whenever a worker slot or pod-queue slot opens up (or a pod turns
    // ready); the simulation uses it to kick the gateway dispatcher.
    void set_capacity_listener(std::function<void(std::uint64_t pod, SimTime now)> fn) {
        on_capacity_ = std::move(fn);
    }

    // Pre-provisioned replica, routable immediately (no cold start).
    std::uint64_t add_ready_pod(SimTime now);

    // Scale-up path: cold-starts, then a PodReady event makes it routable.
    // Returns nullopt when the replica budget is exhausted.
    std::optional<std::uint64_t> spawn_pod(SimTime now);

    void handle_pod_ready(std::uint64_t pod_id, SimTime now);

    bool can_accept(std::uint64_t pod_id) const;
    Accept pod_accept(std::uint64_t pod_id, Request& req, SimTime now);

    // At service_end. Pipelined models free the worker here; single-process
    // models keep it busy until the response has left the pod.
    void pod_complete(std::uint64_t pod_id, Request& req, SimTime now);
    void release_worker(std::uint64_t pod_id, SimTime now);

    // Scale to `desired` ready+pending replicas: spawns the shortfall, drains
    // the surplus (terminating pods finish in-flight work, accept nothing new).
    void apply_desired(std::uint32_t desired, SimTime now);

    struct ResourceSample {
        std::uint64_t id;
        double cpu_fraction;
        std::uint64_t mem_bytes;
    };
    // Settles and resets each ready pod's busy-time window.
    std::vector<ResourceSample> sample_resources(SimTime now);

    std::uint32_t ready_count() const;
    std::uint32_t pending_count() const;
    std::vector<std::uint64_t> ready_pod_ids() const;
    std::uint32_t pod_load(std::uint64_t pod_id) const { return pod(pod_id).load(); }
    PodState pod_state(std::uint64_t pod_id) const { return pod(pod_id).state; }
    std::uint32_t free_capacity(std::uint64_t pod_id) const;
    const ExecutionModel& model() const { return model_; }
    const ServiceProfile& profile() const { return profile_; }
    std::uint32_t spawned_total() const { return static_cast<std::uint32_t>(pods_.size()); }

    const PodInstance& pod(std::uint64_t id) const { return pods_[id - 1]; }

private:
    PodInstance& pod_mut(std::uint64_t id) { return pods_[id - 1]; }
    void settle_busy(PodInstance& p, SimTime now);
    void begin_service(PodInstance& p, Request& req, SimTime now);
    void free_worker_and_pull(PodInstance& p, SimTime now);
    void maybe_finish_termination(PodInstance& p);
    SimTime jittered(SimTime base);

    ExecutionModel model_;
    ServiceProfile profile_;
    ColdStartProfile cold_;
    ResourceModel resources_;
    double service_jitter_;
    std::uint32_t max_replicas_;
    Engine& engine_;
    RequestStore& store_;
    std::function<void(std::uint64_t, SimTime)> on_capacity_;
    std::vector<PodInstance> pods_;  // id = index + 1
};

ExecutionModel archetype_model(Archetype a);
ServiceProfile archetype_service_profile(Archetype a);
ColdStartProfile archetype_cold_start(Archetype a);
ResourceModel archetype_resources(Archetype a);

}  // namespace faasim
