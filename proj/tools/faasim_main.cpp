#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "faasim/scenario.hpp"
#include "faasim/simulation.hpp"
#include "faasim/sweep.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeFatal = 3;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void print_summary(const faasim::ResultBundle& b) {
    const auto& s = b.summary;
    std::printf("scenario %s (seed %llu)\n", s.scenario.c_str(),
                static_cast<unsigned long long>(s.seed));
    std::printf("  requests: issued=%llu completed=%llu timed_out=%llu dropped=%llu in_flight=%llu"
                " retries=%llu\n",
                static_cast<unsigned long long>(s.issued),
                static_cast<unsigned long long>(s.completed),
                static_cast<unsigned long long>(s.timed_out),
                static_cast<unsigned long long>(s.dropped),
                static_cast<unsigned long long>(s.in_flight),
                static_cast<unsigned long long>(s.retries));
    std::printf("  drops: ingress=%llu pod=%llu\n",
                static_cast<unsigned long long>(s.drop_events_ingress),
                static_cast<unsigned long long>(s.drop_events_pod));
    std::printf("  throughput: %.1f rps (interval mean %.1f, std %.1f)\n", s.throughput_rps,
                s.throughput_interval_mean, s.throughput_interval_std);
    std::printf("  latency: mean %.3f ms, p50 %.3f ms, p99 %.3f ms, p99.9 %.3f ms\n",
                s.mean_latency_us / 1e3, static_cast<double>(s.p50_us) / 1e3,
                static_cast<double>(s.p99_us) / 1e3, static_cast<double>(s.p999_us) / 1e3);
    std::printf("  pods: peak %u, scrape bytes %llu, conservation %s\n", s.peak_ready_pods,
                static_cast<unsigned long long>(s.total_scrape_bytes),
                s.conservation_holds() ? "ok" : "VIOLATED");
}

std::vector<std::uint32_t> parse_u32_list(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"faasim: discrete-event simulator of serverless platform dynamics"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string output_dir = ".";
    std::string format = "csv";
    std::int64_t seed_override = -1;
    double duration_override = -1.0;

    auto* run = app.add_subcommand("run", "run one scenario and write its results");
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--output-dir", output_dir, "directory for result files");
    run->add_option("--seed", seed_override, "override the scenario seed");
    run->add_option("--duration", duration_override, "override the duration (seconds)");
    run->add_option("--format", format, "csv (timeline/histogram CSVs + summary JSON) or "
                                        "structured (one JSON bundle)")
        ->check(CLI::IsMember({"csv", "structured"}));

    auto* sweep = app.add_subcommand("sweep", "run a seed x concurrency sweep");
    std::uint32_t n_seeds = 20;
    std::string concurrency_csv = "100";
    sweep->add_option("scenario", scenario_path, "scenario file")->required();
    sweep->add_option("--seeds", n_seeds, "number of seeds (base seed, base+1, ...)");
    sweep->add_option("--concurrency", concurrency_csv, "comma-separated connection counts");
    sweep->add_option("--output-dir", output_dir, "directory for result files");
    sweep->add_option("--seed", seed_override, "base seed (default: scenario seed)");
    sweep->add_option("--duration", duration_override, "override the duration (seconds)");

    CLI11_PARSE(app, argc, argv);

    faasim::Scenario scenario;
    try {
        scenario = faasim::load_scenario(scenario_path);
        if (seed_override >= 0) scenario.seed = static_cast<std::uint64_t>(seed_override);
        if (duration_override > 0) {
            scenario.duration = faasim::SimTime::from_seconds(duration_override);
            scenario.workload.duration = scenario.duration;
            if (scenario.warmup >= scenario.duration) {
                scenario.warmup = faasim::SimTime{0};
                scenario.workload.warmup = scenario.warmup;
            }
        }
    } catch (const faasim::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        fs::create_directories(output_dir);
        if (app.got_subcommand(run)) {
            faasim::ResultBundle bundle = faasim::run_scenario(scenario);
            fs::path dir(output_dir);
            std::string stem = scenario.name;
            if (format == "structured") {
                nlohmann::json j = nlohmann::json::parse(bundle.summary_json(0));
                j["timeline_csv"] = bundle.timeline_csv();
                j["histogram_csv"] = bundle.histogram_csv();
                write_file(dir / (stem + ".bundle.json"), j.dump(2) + "\n");
            } else {
                write_file(dir / (stem + ".summary.json"), bundle.summary_json(2) + "\n");
                write_file(dir / (stem + ".timeline.csv"), bundle.timeline_csv());
                write_file(dir / (stem + ".histogram.csv"), bundle.histogram_csv());
            }
            print_summary(bundle);
            if (!bundle.summary.conservation_holds()) return kExitRuntimeFatal;
        } else {
            std::vector<std::uint64_t> seeds;
            std::uint64_t base = seed_override >= 0 ? static_cast<std::uint64_t>(seed_override)
                                                    : scenario.seed;
            for (std::uint32_t i = 0; i < n_seeds; ++i) seeds.push_back(base + i);
            auto concurrencies = parse_u32_list(concurrency_csv);
            auto cells = faasim::run_sweep(scenario, seeds, concurrencies);
            std::string csv = faasim::sweep_csv(cells);
            write_file(fs::path(output_dir) / (scenario.name + ".sweep.csv"), csv);
            std::cout << csv;
        }
    } catch (const faasim::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return kExitRuntimeFatal;
    }
    return 0;
}
