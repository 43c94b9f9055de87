#include "faasim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace faasim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ScenarioError("scenario: " + key + ": " + what);
}

void check_keys(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.contains(it.key())) {
            fail(prefix.empty() ? it.key() : prefix + "." + it.key(), "unknown key");
        }
    }
}

double get_num(const json& obj, const std::string& prefix, const std::string& key, double dflt) {
    if (!obj.contains(key)) return dflt;
    if (!obj[key].is_number()) fail(prefix + "." + key, "expected a number");
    return obj[key].get<double>();
}

std::int64_t get_int(const json& obj, const std::string& prefix, const std::string& key,
                     std::int64_t dflt) {
    if (!obj.contains(key)) return dflt;
    if (!obj[key].is_number_integer()) fail(prefix + "." + key, "expected an integer");
    return obj[key].get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& prefix, const std::string& key, bool dflt) {
    if (!obj.contains(key)) return dflt;
    if (!obj[key].is_boolean()) fail(prefix + "." + key, "expected a boolean");
    return obj[key].get<bool>();
}

std::string get_str(const json& obj, const std::string& prefix, const std::string& key,
                    const std::string& dflt) {
    if (!obj.contains(key)) return dflt;
    if (!obj[key].is_string()) fail(prefix + "." + key, "expected a string");
    return obj[key].get<std::string>();
}

// All durations in scenario files are seconds.
SimTime get_secs(const json& obj, const std::string& prefix, const std::string& key, SimTime dflt) {
    if (!obj.contains(key)) return dflt;
    if (!obj[key].is_number()) fail(prefix + "." + key, "expected seconds as a number");
    return SimTime::from_seconds(obj[key].get<double>());
}

}  // namespace

const char* archetype_name(Archetype a) {
    switch (a) {
        case Archetype::WarmMultiWorker: return "nuclio";
        case Archetype::WatchdogProxy: return "openfaas";
        case Archetype::SidecarQueue: return "knative";
        case Archetype::ForkNoQueue: return "kubeless";
        case Archetype::Custom: return "custom";
    }
    return "custom";
}

Archetype archetype_from_name(const std::string& name) {
    if (name == "nuclio") return Archetype::WarmMultiWorker;
    if (name == "openfaas") return Archetype::WatchdogProxy;
    if (name == "knative") return Archetype::SidecarQueue;
    if (name == "kubeless") return Archetype::ForkNoQueue;
    if (name == "custom") return Archetype::Custom;
    fail("archetype", "unknown archetype '" + name + "'");
}

Scenario scenario_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ScenarioError("scenario: top level must be an object");
    check_keys(root, "", {"name", "archetype", "seed", "duration", "warmup", "workload", "service",
                          "model", "cluster", "gateway", "autoscaler", "scrape"});

    Scenario s;
    s.name = get_str(root, "", "name", "unnamed");
    if (!root.contains("archetype")) fail("archetype", "required");
    s.archetype = archetype_from_name(get_str(root, "", "archetype", ""));
    s.seed = static_cast<std::uint64_t>(get_int(root, "", "seed", 1));
    if (!root.contains("duration")) fail("duration", "required");
    s.duration = get_secs(root, "", "duration", SimTime{0});
    s.warmup = get_secs(root, "", "warmup", SimTime{0});
    if (s.duration.micros <= 0) fail("duration", "must be positive");
    if (s.warmup >= s.duration) fail("warmup", "must be smaller than duration");

    // ---- workload ----
    if (!root.contains("workload")) fail("workload", "required");
    const json& w = root["workload"];
    check_keys(w, "workload", {"mode", "connections", "rps", "arrival_process", "request_timeout",
                               "retry_delay"});
    std::string mode = get_str(w, "workload", "mode", "closed-loop");
    if (mode == "closed-loop") {
        s.workload.mode = WorkloadMode::ClosedLoop;
    } else if (mode == "open-loop") {
        s.workload.mode = WorkloadMode::OpenLoop;
    } else {
        fail("workload.mode", "expected closed-loop or open-loop");
    }
    s.workload.connections = static_cast<std::uint32_t>(get_int(w, "workload", "connections", 1));
    s.workload.rps = get_num(w, "workload", "rps", 0.0);
    std::string ap = get_str(w, "workload", "arrival_process", "fixed");
    if (ap == "fixed") {
        s.workload.arrivals = ArrivalProcess::Fixed;
    } else if (ap == "poisson") {
        s.workload.arrivals = ArrivalProcess::Poisson;
    } else {
        fail("workload.arrival_process", "expected fixed or poisson");
    }
    s.workload.request_timeout =
        get_secs(w, "workload", "request_timeout", SimTime::from_seconds(10.0));
    s.workload.retry_delay = get_secs(w, "workload", "retry_delay", SimTime::from_ms(1.0));
    s.workload.duration = s.duration;
    s.workload.warmup = s.warmup;
    if (s.workload.mode == WorkloadMode::ClosedLoop && s.workload.connections < 1) {
        fail("workload.connections", "closed-loop needs at least 1 connection");
    }
    if (s.workload.mode == WorkloadMode::OpenLoop && s.workload.rps <= 0.0) {
        fail("workload.rps", "open-loop needs rps > 0");
    }
    if (s.workload.request_timeout.micros <= 0) fail("workload.request_timeout", "must be positive");
    if (s.workload.retry_delay.micros <= 0) fail("workload.retry_delay", "must be positive");

    // ---- execution model (archetype presets + overrides) ----
    s.model = archetype_model(s.archetype);
    s.service = archetype_service_profile(s.archetype);
    s.cluster.cold_start = archetype_cold_start(s.archetype);
    s.cluster.resources = archetype_resources(s.archetype);

    if (root.contains("model")) {
        const json& m = root["model"];
        check_keys(m, "model", {"workers", "pod_queue_capacity", "watchdog_mode",
                                "gateway_queuing", "single_process"});
        if (m.contains("workers")) {
            auto workers = static_cast<std::uint32_t>(get_int(m, "model", "workers", 1));
            if (workers < 1) fail("model.workers", "must be >= 1");
            bool fixed_single = s.archetype == Archetype::WatchdogProxy ||
                                s.archetype == Archetype::ForkNoQueue;
            if (fixed_single && workers != 1) {
                fail("model.workers", std::string(archetype_name(s.archetype)) +
                                          " runs a single worker per pod");
            }
            s.model.workers = workers;
        }
        if (m.contains("pod_queue_capacity")) {
            if (m["pod_queue_capacity"].is_null()) {
                s.model.pod_queue_capacity = std::nullopt;
            } else {
                if (s.archetype == Archetype::ForkNoQueue) {
                    fail("model.pod_queue_capacity", "kubeless pods have no queue");
                }
                s.model.pod_queue_capacity =
                    static_cast<std::uint32_t>(get_int(m, "model", "pod_queue_capacity", 0));
            }
        }
        if (m.contains("watchdog_mode")) {
            std::string wm = get_str(m, "model", "watchdog_mode", "http");
            if (wm == "http") {
                s.model.watchdog_mode = WatchdogMode::Http;
            } else if (wm == "fork-per-request") {
                s.model.watchdog_mode = WatchdogMode::ForkPerRequest;
            } else {
                fail("model.watchdog_mode", "expected http or fork-per-request");
            }
            if (s.archetype != Archetype::WatchdogProxy && s.archetype != Archetype::Custom) {
                fail("model.watchdog_mode", "only meaningful for openfaas/custom");
            }
        }
        if (s.archetype == Archetype::Custom) {
            s.model.gateway_queuing = get_bool(m, "model", "gateway_queuing", false);
            s.model.single_process = get_bool(m, "model", "single_process", false);
        } else if (m.contains("gateway_queuing") || m.contains("single_process")) {
            fail("model.gateway_queuing", "queue topology is fixed per archetype");
        }
    }

    // ---- service profile overrides ----
    if (root.contains("service")) {
        const json& sv = root["service"];
        check_keys(sv, "service", {"forward_in", "runtime", "respond_out", "fork_cost"});
        s.service.forward_in = get_secs(sv, "service", "forward_in", s.service.forward_in);
        s.service.runtime = get_secs(sv, "service", "runtime", s.service.runtime);
        s.service.respond_out = get_secs(sv, "service", "respond_out", s.service.respond_out);
        s.service.fork_cost = get_secs(sv, "service", "fork_cost", s.service.fork_cost);
        for (auto [key, v] : {std::pair{"forward_in", s.service.forward_in},
                              {"runtime", s.service.runtime},
                              {"respond_out", s.service.respond_out},
                              {"fork_cost", s.service.fork_cost}}) {
            if (v.micros < 0) fail(std::string("service.") + key, "must be >= 0");
        }
    }

    // ---- cluster ----
    if (root.contains("cluster")) {
        const json& c = root["cluster"];
        check_keys(c, "cluster", {"initial_replicas", "max_replicas", "cold_start_delay",
                                  "cpu_weight", "mem_base_bytes", "mem_per_queued_bytes",
                                  "mem_limit_bytes", "service_jitter_fraction"});
        s.cluster.initial_replicas =
            static_cast<std::uint32_t>(get_int(c, "cluster", "initial_replicas", 1));
        s.cluster.max_replicas =
            static_cast<std::uint32_t>(get_int(c, "cluster", "max_replicas", 10));
        s.cluster.cold_start.cold_start_delay =
            get_secs(c, "cluster", "cold_start_delay", s.cluster.cold_start.cold_start_delay);
        if (s.cluster.cold_start.cold_start_delay.micros < 0) {
            fail("cluster.cold_start_delay", "must be >= 0");
        }
        s.cluster.resources.cpu_weight =
            get_num(c, "cluster", "cpu_weight", s.cluster.resources.cpu_weight);
        s.cluster.resources.mem_base_bytes = static_cast<std::uint64_t>(get_int(
            c, "cluster", "mem_base_bytes", static_cast<std::int64_t>(s.cluster.resources.mem_base_bytes)));
        s.cluster.resources.mem_per_queued_bytes = static_cast<std::uint64_t>(
            get_int(c, "cluster", "mem_per_queued_bytes",
                    static_cast<std::int64_t>(s.cluster.resources.mem_per_queued_bytes)));
        s.cluster.resources.mem_limit_bytes = static_cast<std::uint64_t>(
            get_int(c, "cluster", "mem_limit_bytes",
                    static_cast<std::int64_t>(s.cluster.resources.mem_limit_bytes)));
        s.cluster.service_jitter_fraction =
            get_num(c, "cluster", "service_jitter_fraction", 0.0);
        if (s.cluster.service_jitter_fraction < 0.0 || s.cluster.service_jitter_fraction >= 1.0) {
            fail("cluster.service_jitter_fraction", "must be in [0, 1)");
        }
        if (s.cluster.initial_replicas < 1) fail("cluster.initial_replicas", "must be >= 1");
        if (s.cluster.max_replicas < s.cluster.initial_replicas) {
            fail("cluster.max_replicas", "must be >= initial_replicas");
        }
    }

    // ---- gateway ----
    if (root.contains("gateway")) {
        const json& g = root["gateway"];
        check_keys(g, "gateway", {"queue_capacity", "queue_timeout", "lb_policy", "export_mode",
                                  "extra_hop_delay", "hop_jitter_fraction"});
        s.gateway.queue_capacity =
            static_cast<std::uint32_t>(get_int(g, "gateway", "queue_capacity", 50'000));
        s.gateway.queue_timeout =
            get_secs(g, "gateway", "queue_timeout", SimTime::from_seconds(10.0));
        if (s.gateway.queue_timeout.micros <= 0) fail("gateway.queue_timeout", "must be positive");
        std::string lb = get_str(g, "gateway", "lb_policy", "round-robin");
        if (lb == "round-robin") {
            s.gateway.lb_policy = LbPolicy::RoundRobin;
        } else if (lb == "random") {
            s.gateway.lb_policy = LbPolicy::Random;
        } else if (lb == "least-connection") {
            s.gateway.lb_policy = LbPolicy::LeastConnection;
        } else {
            fail("gateway.lb_policy", "expected round-robin, random or least-connection");
        }
        std::string em = get_str(g, "gateway", "export_mode", "ingress");
        if (em == "ingress") {
            s.gateway.export_mode = ExportMode::Ingress;
        } else if (em == "nodeport") {
            s.gateway.export_mode = ExportMode::NodePort;
        } else {
            fail("gateway.export_mode", "expected ingress or nodeport");
        }
        s.gateway.extra_hop_delay = get_secs(g, "gateway", "extra_hop_delay", SimTime::from_ms(0.05));
        if (s.gateway.extra_hop_delay.micros < 0) fail("gateway.extra_hop_delay", "must be >= 0");
        s.gateway.hop_jitter_fraction = get_num(g, "gateway", "hop_jitter_fraction", 0.0);
        if (s.gateway.hop_jitter_fraction < 0.0 || s.gateway.hop_jitter_fraction >= 1.0) {
            fail("gateway.hop_jitter_fraction", "must be in [0, 1)");
        }
    }

    // ---- autoscaler (at most one policy block) ----
    if (root.contains("autoscaler")) {
        const json& a = root["autoscaler"];
        check_keys(a, "autoscaler", {"hpa", "kpa", "rps_alert"});
        int blocks = static_cast<int>(a.contains("hpa")) + static_cast<int>(a.contains("kpa")) +
                     static_cast<int>(a.contains("rps_alert"));
        if (blocks == 0) fail("autoscaler", "needs one of hpa, kpa, rps_alert");
        if (blocks > 1) fail("autoscaler", "exactly one policy block allowed");
        if (a.contains("hpa")) {
            const json& h = a["hpa"];
            check_keys(h, "autoscaler.hpa", {"metric", "target_fraction", "sync_period",
                                             "min_replicas", "max_replicas", "tolerance"});
            HpaConfig cfg;
            std::string metric = get_str(h, "autoscaler.hpa", "metric", "cpu");
            if (metric == "cpu") {
                cfg.metric = HpaMetric::Cpu;
            } else if (metric == "memory") {
                cfg.metric = HpaMetric::Memory;
            } else {
                fail("autoscaler.hpa.metric", "expected cpu or memory");
            }
            cfg.target_fraction = get_num(h, "autoscaler.hpa", "target_fraction", 0.5);
            if (cfg.target_fraction <= 0.0 || cfg.target_fraction > 1.0) {
                fail("autoscaler.hpa.target_fraction", "must be in (0, 1]");
            }
            cfg.sync_period = get_secs(h, "autoscaler.hpa", "sync_period", SimTime::from_seconds(15));
            if (cfg.sync_period.micros <= 0) fail("autoscaler.hpa.sync_period", "must be positive");
            cfg.min_replicas =
                static_cast<std::uint32_t>(get_int(h, "autoscaler.hpa", "min_replicas", 1));
            cfg.max_replicas =
                static_cast<std::uint32_t>(get_int(h, "autoscaler.hpa", "max_replicas", 10));
            if (cfg.min_replicas > cfg.max_replicas) {
                fail("autoscaler.hpa.min_replicas", "must be <= max_replicas");
            }
            cfg.tolerance = get_num(h, "autoscaler.hpa", "tolerance", 0.1);
            s.autoscaler = cfg;
        } else if (a.contains("kpa")) {
            const json& k = a["kpa"];
            check_keys(k, "autoscaler.kpa",
                       {"metric", "target", "tick", "stable_window", "max_scale_up_rate",
                        "min_scale", "max_scale", "scale_to_zero", "scale_to_zero_grace"});
            KpaConfig cfg;
            std::string metric = get_str(k, "autoscaler.kpa", "metric", "concurrency");
            if (metric == "concurrency") {
                cfg.metric = KpaMetric::Concurrency;
            } else if (metric == "rps") {
                cfg.metric = KpaMetric::Rps;
            } else {
                fail("autoscaler.kpa.metric", "expected concurrency or rps");
            }
            cfg.target = get_num(k, "autoscaler.kpa", "target", 10.0);
            if (cfg.target <= 0.0) fail("autoscaler.kpa.target", "must be positive");
            cfg.tick = get_secs(k, "autoscaler.kpa", "tick", SimTime::from_seconds(2));
            if (cfg.tick.micros <= 0) fail("autoscaler.kpa.tick", "must be positive");
            cfg.stable_window =
                get_secs(k, "autoscaler.kpa", "stable_window", SimTime::from_seconds(10));
            if (cfg.tick > cfg.stable_window) {
                fail("autoscaler.kpa.tick", "must be <= stable_window");
            }
            cfg.max_scale_up_rate = get_num(k, "autoscaler.kpa", "max_scale_up_rate", 100.0);
            cfg.min_scale = static_cast<std::uint32_t>(get_int(k, "autoscaler.kpa", "min_scale", 1));
            cfg.max_scale = static_cast<std::uint32_t>(get_int(k, "autoscaler.kpa", "max_scale", 10));
            if (cfg.min_scale > cfg.max_scale) {
                fail("autoscaler.kpa.min_scale", "must be <= max_scale");
            }
            cfg.scale_to_zero = get_bool(k, "autoscaler.kpa", "scale_to_zero", false);
            cfg.scale_to_zero_grace =
                get_secs(k, "autoscaler.kpa", "scale_to_zero_grace", SimTime::from_seconds(30));
            s.autoscaler = cfg;
        } else {
            const json& r = a["rps_alert"];
            check_keys(r, "autoscaler.rps_alert",
                       {"rps_threshold", "alert_window", "scale_factor_percent", "scrape_interval",
                        "pipeline_delay", "min_replicas", "max_replicas"});
            RpsAlertConfig cfg;
            cfg.rps_threshold = get_num(r, "autoscaler.rps_alert", "rps_threshold", 10.0);
            if (cfg.rps_threshold <= 0.0) fail("autoscaler.rps_alert.rps_threshold", "must be positive");
            cfg.alert_window =
                get_secs(r, "autoscaler.rps_alert", "alert_window", SimTime::from_seconds(2));
            if (cfg.alert_window.micros <= 0) fail("autoscaler.rps_alert.alert_window", "must be positive");
            cfg.scale_factor_percent =
                get_num(r, "autoscaler.rps_alert", "scale_factor_percent", 10.0);
            if (cfg.scale_factor_percent <= 0.0 || cfg.scale_factor_percent > 100.0) {
                fail("autoscaler.rps_alert.scale_factor_percent", "must be in (0, 100]");
            }
            cfg.scrape_interval =
                get_secs(r, "autoscaler.rps_alert", "scrape_interval", SimTime::from_seconds(1));
            if (cfg.scrape_interval.micros <= 0) {
                fail("autoscaler.rps_alert.scrape_interval", "must be positive");
            }
            cfg.pipeline_delay =
                get_secs(r, "autoscaler.rps_alert", "pipeline_delay", SimTime::from_seconds(1));
            if (cfg.pipeline_delay.micros < 0) {
                fail("autoscaler.rps_alert.pipeline_delay", "must be >= 0");
            }
            cfg.min_replicas =
                static_cast<std::uint32_t>(get_int(r, "autoscaler.rps_alert", "min_replicas", 1));
            cfg.max_replicas =
                static_cast<std::uint32_t>(get_int(r, "autoscaler.rps_alert", "max_replicas", 10));
            if (cfg.min_replicas > cfg.max_replicas) {
                fail("autoscaler.rps_alert.min_replicas", "must be <= max_replicas");
            }
            s.autoscaler = cfg;
        }
    }

    // Autoscaler bounds drive the replica budget unless the cluster block
    // overrides it.
    if (!root.contains("cluster") || !root["cluster"].contains("max_replicas")) {
        if (auto* h = std::get_if<HpaConfig>(&s.autoscaler)) s.cluster.max_replicas = h->max_replicas;
        if (auto* k = std::get_if<KpaConfig>(&s.autoscaler)) s.cluster.max_replicas = k->max_scale;
        if (auto* r = std::get_if<RpsAlertConfig>(&s.autoscaler)) {
            s.cluster.max_replicas = r->max_replicas;
        }
        if (std::holds_alternative<std::monostate>(s.autoscaler)) {
            s.cluster.max_replicas = std::max(s.cluster.max_replicas, s.cluster.initial_replicas);
        }
    }

    // ---- scrape ----
    if (root.contains("scrape")) {
        const json& sc = root["scrape"];
        check_keys(sc, "scrape", {"interval", "per_pod_cost_bytes", "sampling_fraction"});
        s.scrape.interval = get_secs(sc, "scrape", "interval", SimTime::from_seconds(2));
        if (s.scrape.interval.micros <= 0) fail("scrape.interval", "must be positive");
        s.scrape.per_pod_cost_bytes =
            static_cast<std::uint64_t>(get_int(sc, "scrape", "per_pod_cost_bytes", 512));
        s.scrape.sampling_fraction = get_num(sc, "scrape", "sampling_fraction", 1.0);
        if (s.scrape.sampling_fraction <= 0.0 || s.scrape.sampling_fraction > 1.0) {
            fail("scrape.sampling_fraction", "must be in (0, 1]");
        }
    }

    if (s.archetype == Archetype::Custom && !root.contains("model")) {
        fail("model", "custom archetype needs an explicit model block");
    }
    if (s.service.in_pod_total().micros <= 0) {
        fail("service.runtime", "total in-pod time must be positive");
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

std::string Scenario::to_json(int indent) const {
    json root;
    root["name"] = name;
    root["archetype"] = archetype_name(archetype);
    root["seed"] = seed;
    root["duration"] = duration.seconds();
    root["warmup"] = warmup.seconds();

    json w;
    w["mode"] = workload.mode == WorkloadMode::ClosedLoop ? "closed-loop" : "open-loop";
    w["connections"] = workload.connections;
    w["rps"] = workload.rps;
    w["arrival_process"] = workload.arrivals == ArrivalProcess::Fixed ? "fixed" : "poisson";
    w["request_timeout"] = workload.request_timeout.seconds();
    w["retry_delay"] = workload.retry_delay.seconds();
    root["workload"] = w;

    json m;
    m["workers"] = model.workers;
    if (model.pod_queue_capacity) {
        m["pod_queue_capacity"] = *model.pod_queue_capacity;
    } else {
        m["pod_queue_capacity"] = nullptr;
    }
    if (archetype == Archetype::WatchdogProxy || archetype == Archetype::Custom) {
        m["watchdog_mode"] =
            model.watchdog_mode == WatchdogMode::Http ? "http" : "fork-per-request";
    }
    if (archetype == Archetype::Custom) {
        m["gateway_queuing"] = model.gateway_queuing;
        m["single_process"] = model.single_process;
    }
    root["model"] = m;

    json sv;
    sv["forward_in"] = service.forward_in.seconds();
    sv["runtime"] = service.runtime.seconds();
    sv["respond_out"] = service.respond_out.seconds();
    sv["fork_cost"] = service.fork_cost.seconds();
    root["service"] = sv;

    json c;
    c["initial_replicas"] = cluster.initial_replicas;
    c["max_replicas"] = cluster.max_replicas;
    c["cold_start_delay"] = cluster.cold_start.cold_start_delay.seconds();
    c["cpu_weight"] = cluster.resources.cpu_weight;
    c["mem_base_bytes"] = cluster.resources.mem_base_bytes;
    c["mem_per_queued_bytes"] = cluster.resources.mem_per_queued_bytes;
    c["mem_limit_bytes"] = cluster.resources.mem_limit_bytes;
    c["service_jitter_fraction"] = cluster.service_jitter_fraction;
    root["cluster"] = c;

    json g;
    g["queue_capacity"] = gateway.queue_capacity;
    g["queue_timeout"] = gateway.queue_timeout.seconds();
    switch (gateway.lb_policy) {
        case LbPolicy::RoundRobin: g["lb_policy"] = "round-robin"; break;
        case LbPolicy::Random: g["lb_policy"] = "random"; break;
        case LbPolicy::LeastConnection: g["lb_policy"] = "least-connection"; break;
    }
    g["export_mode"] = gateway.export_mode == ExportMode::Ingress ? "ingress" : "nodeport";
    g["extra_hop_delay"] = gateway.extra_hop_delay.seconds();
    g["hop_jitter_fraction"] = gateway.hop_jitter_fraction;
    root["gateway"] = g;

    if (auto* h = std::get_if<HpaConfig>(&autoscaler)) {
        json x;
        x["metric"] = h->metric == HpaMetric::Cpu ? "cpu" : "memory";
        x["target_fraction"] = h->target_fraction;
        x["sync_period"] = h->sync_period.seconds();
        x["min_replicas"] = h->min_replicas;
        x["max_replicas"] = h->max_replicas;
        x["tolerance"] = h->tolerance;
        root["autoscaler"]["hpa"] = x;
    } else if (auto* k = std::get_if<KpaConfig>(&autoscaler)) {
        json x;
        x["metric"] = k->metric == KpaMetric::Concurrency ? "concurrency" : "rps";
        x["target"] = k->target;
        x["tick"] = k->tick.seconds();
        x["stable_window"] = k->stable_window.seconds();
        x["max_scale_up_rate"] = k->max_scale_up_rate;
        x["min_scale"] = k->min_scale;
        x["max_scale"] = k->max_scale;
        x["scale_to_zero"] = k->scale_to_zero;
        x["scale_to_zero_grace"] = k->scale_to_zero_grace.seconds();
        root["autoscaler"]["kpa"] = x;
    } else if (auto* r = std::get_if<RpsAlertConfig>(&autoscaler)) {
        json x;
        x["rps_threshold"] = r->rps_threshold;
        x["alert_window"] = r->alert_window.seconds();
        x["scale_factor_percent"] = r->scale_factor_percent;
        x["scrape_interval"] = r->scrape_interval.seconds();
        x["pipeline_delay"] = r->pipeline_delay.seconds();
        x["min_replicas"] = r->min_replicas;
        x["max_replicas"] = r->max_replicas;
        root["autoscaler"]["rps_alert"] = x;
    }

    json sc;
    sc["interval"] = scrape.interval.seconds();
    sc["per_pod_cost_bytes"] = scrape.per_pod_cost_bytes;
    sc["sampling_fraction"] = scrape.sampling_fraction;
    root["scrape"] = sc;

    return root.dump(indent);
}

}  // namespace faasim
