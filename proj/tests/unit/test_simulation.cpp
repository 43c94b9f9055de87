#include <doctest.h>

#include <set>

#include "faasim/scenario.hpp"
#include "faasim/simulation.hpp"

using namespace faasim;

namespace {

Scenario parse(const std::string& json) { return scenario_from_json(json); }

std::string one_shot(const std::string& archetype) {
    // One isolated request: one connection, generous timeout, short run.
    return R"({"name":"one-shot","archetype":")" + archetype + R"(",
        "duration": 0.5, "workload": {"mode": "closed-loop", "connections": 1,
        "request_timeout": 0.4}})";
}

}  // namespace

TEST_CASE("isolated request reproduces the per-archetype in-pod latency") {
    struct Row {
        const char* name;
        std::int64_t in_pod_us;
    };
    for (Row row : {Row{"nuclio", 1171}, Row{"openfaas", 2251}, Row{"knative", 1921},
                    Row{"kubeless", 7591}}) {
        Simulation sim(parse(one_shot(row.name)));
        sim.run();
        const Request& first = sim.requests().at(0);
        REQUIRE(first.outcome == Outcome::Completed);
        // response leaves the pod at completion (the return path is free)
        std::int64_t in_pod = (*first.completed_at - *first.pod_enqueued_at).micros;
        CHECK(in_pod == row.in_pod_us);
        // client sees one extra ingress hop of 0.05 ms
        CHECK((*first.completed_at - first.issued_at).micros == row.in_pod_us + 50);
    }
}

TEST_CASE("same scenario and seed give byte-identical bundles") {
    const char* j = R"({
        "name": "det", "archetype": "knative", "duration": 10, "warmup": 2, "seed": 33,
        "workload": {"mode": "closed-loop", "connections": 20},
        "cluster": {"service_jitter_fraction": 0.2},
        "gateway": {"hop_jitter_fraction": 0.4},
        "autoscaler": {"kpa": {"target": 5, "max_scale": 4}}
    })";
    ResultBundle a = run_scenario(parse(j));
    ResultBundle b = run_scenario(parse(j));
    CHECK(a.serialize() == b.serialize());
    // and a different seed actually changes the trajectory
    Scenario other = parse(j);
    other.seed = 34;
    ResultBundle c = run_scenario(other);
    CHECK(a.serialize() != c.serialize());
}

TEST_CASE("conservation holds under churn") {
    const char* j = R"({
        "name": "churn", "archetype": "kubeless", "duration": 12, "seed": 7,
        "workload": {"mode": "closed-loop", "connections": 50, "request_timeout": 2,
                     "retry_delay": 0.005},
        "service": {"runtime": 0.02}
    })";
    Simulation sim(parse(j));
    ResultBundle b = sim.run();
    CHECK(b.summary.conservation_holds());
    CHECK(b.summary.drop_events_ingress > 0);
    CHECK(b.summary.in_flight <= 50);
    // lifecycle timestamps are non-decreasing, and completed_at is present
    // exactly for completed requests
    for (const Request& r : sim.requests()) {
        CHECK((r.outcome == Outcome::Completed) == r.completed_at.has_value());
        SimTime last = r.issued_at;
        for (const auto& t : {r.gateway_enqueued_at, r.pod_enqueued_at, r.service_start,
                              r.service_end, r.completed_at}) {
            if (!t.has_value()) continue;
            CHECK(*t >= last);
            last = *t;
        }
    }
}

TEST_CASE("gateway queue eviction fires at exactly queue_timeout") {
    // Two requests against one slow single-process pod with no pod queue:
    // the second waits at the gateway and gets evicted 1.5 s after enqueue.
    const char* j = R"({
        "name": "gw-timeout", "archetype": "openfaas", "duration": 8,
        "workload": {"mode": "closed-loop", "connections": 2, "request_timeout": 6},
        "model": {"pod_queue_capacity": 0},
        "service": {"forward_in": 0, "runtime": 5, "respond_out": 0},
        "gateway": {"queue_timeout": 1.5, "extra_hop_delay": 0}
    })";
    Simulation sim(parse(j));
    ResultBundle b = sim.run();
    // hand trace: B's requests queue at 0, 1.5, 3.0 and evict 1.5 s later
    // each; B's fourth lands when A's service ends at t=5 and is still
    // running at the end of the 8 s run. A's follow-ups queue behind it and
    // evict at 6.5 and 8.0.
    CHECK(b.summary.timed_out == 5);
    CHECK(b.summary.completed == 1);
    CHECK(b.summary.in_flight == 2);
    bool found = false;
    for (const Request& r : sim.requests()) {
        if (r.outcome == Outcome::TimedOut && r.gateway_enqueued_at.has_value()) {
            found = true;
            break;
        }
    }
    CHECK(found);
}

TEST_CASE("request served just before the deadline does not time out") {
    const char* j = R"({
        "name": "close-call", "archetype": "openfaas", "duration": 12,
        "workload": {"mode": "closed-loop", "connections": 2, "request_timeout": 10},
        "model": {"pod_queue_capacity": 0},
        "service": {"forward_in": 0, "runtime": 4.9995, "respond_out": 0},
        "gateway": {"queue_timeout": 10, "extra_hop_delay": 0}
    })";
    Simulation sim(parse(j));
    sim.run();
    // request 1 waits ~5 s at the gateway, is served at ~9.999 s: no timeout
    const Request& second = sim.requests().at(1);
    CHECK(second.outcome == Outcome::Completed);
}

TEST_CASE("knative scales to zero and the activator revives it") {
    const char* j = R"({
        "name": "s2z", "archetype": "knative", "duration": 30, "seed": 2,
        "workload": {"mode": "open-loop", "rps": 0.05},
        "autoscaler": {"kpa": {"target": 10, "scale_to_zero": true,
                               "scale_to_zero_grace": 6}}
    })";
    Simulation sim(parse(j));
    ResultBundle b = sim.run();
    // arrivals at t=0 and t=20; pods drain to zero in between
    bool hit_zero = false;
    for (const auto& p : sim.pod_count_trace()) {
        if (p.ready == 0 && p.t > SimTime{0}) hit_zero = true;
    }
    CHECK(hit_zero);
    CHECK(b.summary.completed == 2);
    const Request& revived = sim.requests().at(1);
    CHECK(revived.outcome == Outcome::Completed);
    // cold start (2s) sits between issue and completion
    CHECK((*revived.completed_at - revived.issued_at).micros > 1'900'000);
}

TEST_CASE("nodeport spreads closed-loop traffic across both pods") {
    const char* j = R"({
        "name": "nodeport", "archetype": "nuclio", "duration": 3, "seed": 4,
        "workload": {"mode": "closed-loop", "connections": 4},
        "cluster": {"initial_replicas": 2, "max_replicas": 2},
        "gateway": {"export_mode": "nodeport", "lb_policy": "round-robin"}
    })";
    Simulation sim(parse(j));
    ResultBundle b = sim.run();
    std::uint64_t pod1 = 0;
    std::uint64_t total = 0;
    for (const Request& r : sim.requests()) {
        if (r.outcome != Outcome::Completed) continue;
        ++total;
        pod1 += r.pod == 1 ? 1 : 0;
    }
    double frac = static_cast<double>(pod1) / static_cast<double>(total);
    CHECK(b.summary.completed > 1000);
    CHECK(frac > 0.48);
    CHECK(frac < 0.52);
}

TEST_CASE("memory-metric HPA scales on the per-pod footprint") {
    // base footprint 96 MB of a 128 MB allocation = 0.75 > 0.5 target
    const char* j = R"({
        "name": "hpa-mem", "archetype": "knative", "duration": 30,
        "workload": {"mode": "open-loop", "rps": 20},
        "cluster": {"mem_base_bytes": 100663296, "mem_limit_bytes": 134217728,
                    "cold_start_delay": 0},
        "autoscaler": {"hpa": {"metric": "memory", "target_fraction": 0.5,
                               "sync_period": 5, "max_replicas": 4}}
    })";
    Simulation sim(parse(j));
    ResultBundle b = sim.run();
    CHECK(b.timeline.back().ready_pods == 4);  // grew to the clamp
    CHECK(b.summary.peak_ready_pods == 4);
}

TEST_CASE("timeline rows carry the full column set and cover the run") {
    ResultBundle b = run_scenario(parse(R"({
        "name": "cols", "archetype": "nuclio", "duration": 10,
        "workload": {"mode": "open-loop", "rps": 50}
    })"));
    CHECK(b.timeline.size() == 5);  // scrapes at 2,4,6,8,10
    std::string csv = b.timeline_csv();
    CHECK(csv.find("t_s,ready_pods,pending_pods,mean_cpu,total_mem_bytes,throughput_rps,"
                   "scrape_bytes") == 0);
    std::string hist = b.histogram_csv();
    CHECK(hist.find("bucket_low_us,bucket_high_us,count") == 0);
}
