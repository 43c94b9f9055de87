#include "faasim/result.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace faasim {

using nlohmann::json;

namespace {
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}
}  // namespace

std::string ResultBundle::summary_json(int indent) const {
    const RunSummary& s = summary;
    json j;
    j["scenario"] = s.scenario;
    j["seed"] = s.seed;
    j["duration_s"] = s.duration_s;
    j["warmup_s"] = s.warmup_s;
    j["requests"] = {
        {"issued", s.issued},           {"completed", s.completed},
        {"timed_out", s.timed_out},     {"dropped", s.dropped},
        {"in_flight", s.in_flight},     {"retries", s.retries},
        {"drop_events_ingress", s.drop_events_ingress},
        {"drop_events_pod", s.drop_events_pod},
        {"conservation_holds", s.conservation_holds()},
    };
    j["throughput"] = {
        {"measured_completions", s.measured_completions},
        {"rps", s.throughput_rps},
        {"interval_mean_rps", s.throughput_interval_mean},
        {"interval_std_rps", s.throughput_interval_std},
    };
    j["latency_us"] = {
        {"mean", s.mean_latency_us}, {"p50", s.p50_us},   {"p90", s.p90_us},
        {"p99", s.p99_us},           {"p999", s.p999_us},
    };
    j["mean_in_system"] = s.mean_in_system;
    j["peak_ready_pods"] = s.peak_ready_pods;
    j["total_scrape_bytes"] = s.total_scrape_bytes;
    j["events_processed"] = s.events_processed;
    return j.dump(indent);
}

std::string ResultBundle::timeline_csv() const {
    std::ostringstream os;
    os << "t_s,ready_pods,pending_pods,mean_cpu,total_mem_bytes,throughput_rps,scrape_bytes\n";
    for (const auto& row : timeline) {
        os << fmt(row.t.seconds()) << ',' << row.ready_pods << ',' << row.pending_pods << ','
           << fmt(row.mean_cpu) << ',' << row.total_mem_bytes << ',' << fmt(row.throughput_rps)
           << ',' << row.scrape_bytes << '\n';
    }
    return os.str();
}

std::string ResultBundle::histogram_csv() const {
    std::ostringstream os;
    os << "bucket_low_us,bucket_high_us,count\n";
    for (std::size_t i = 0; i < histogram.bucket_count(); ++i) {
        if (histogram.count_at(i) == 0) continue;
        os << histogram.bucket_low_us(i) << ',' << histogram.bucket_high_us(i) << ','
           << histogram.count_at(i) << '\n';
    }
    return os.str();
}

std::string ResultBundle::serialize() const {
    return summary_json(0) + "\n" + timeline_csv() + histogram_csv();
}

}  // namespace faasim
