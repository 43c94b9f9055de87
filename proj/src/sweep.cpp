#include "faasim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "faasim/simulation.hpp"

namespace faasim {

std::vector<SweepCell> run_sweep(const Scenario& base, const std::vector<std::uint64_t>& seeds,
                                 const std::vector<std::uint32_t>& concurrencies,
                                 unsigned max_parallel) {
    if (seeds.empty()) throw ScenarioError("sweep: seed list must not be empty");
    if (concurrencies.empty()) throw ScenarioError("sweep: concurrency list must not be empty");

    struct Job {
        std::size_t cell;
        Scenario scenario;
        double throughput = 0.0;
        double p99_us = 0.0;
    };
    std::vector<Job> jobs;
    for (std::size_t ci = 0; ci < concurrencies.size(); ++ci) {
        for (std::uint64_t seed : seeds) {
            Scenario s = base;
            s.workload.connections = concurrencies[ci];
            s.seed = seed;
            if (s.workload.mode == WorkloadMode::ClosedLoop && s.workload.connections < 1) {
                throw ScenarioError("sweep: concurrency values must be >= 1");
            }
            jobs.push_back({ci, std::move(s)});
        }
    }

    unsigned workers = max_parallel > 0 ? max_parallel : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));

    std::atomic<std::size_t> next{0};
    auto run_jobs = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            ResultBundle b = run_scenario(jobs[i].scenario);
            jobs[i].throughput = b.summary.throughput_rps;
            jobs[i].p99_us = static_cast<double>(b.summary.p99_us);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(run_jobs);
    run_jobs();
    for (auto& t : pool) t.join();

    std::vector<SweepCell> cells(concurrencies.size());
    for (std::size_t ci = 0; ci < concurrencies.size(); ++ci) {
        cells[ci].concurrency = concurrencies[ci];
    }
    std::vector<std::vector<double>> tputs(concurrencies.size());
    for (const Job& j : jobs) {
        tputs[j.cell].push_back(j.throughput);
        cells[j.cell].p99_mean_us += j.p99_us;
    }
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& v = tputs[ci];
        cells[ci].runs = static_cast<std::uint32_t>(v.size());
        double sum = 0.0;
        bool all_equal = true;
        for (double x : v) {
            sum += x;
            all_equal = all_equal && x == v.front();
        }
        double mean = sum / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        cells[ci].throughput_mean = mean;
        cells[ci].throughput_std =
            v.size() > 1 && !all_equal ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
        cells[ci].p99_mean_us /= static_cast<double>(v.size());
    }
    return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
    std::ostringstream os;
    os << "concurrency,runs,throughput_mean_rps,throughput_std_rps,p99_mean_us\n";
    char buf[128];
    for (const auto& c : cells) {
        std::snprintf(buf, sizeof(buf), "%u,%u,%.6f,%.6f,%.6f\n", c.concurrency, c.runs,
                      c.throughput_mean, c.throughput_std, c.p99_mean_us);
        os << buf;
    }
    return os.str();
}

}  // namespace faasim
