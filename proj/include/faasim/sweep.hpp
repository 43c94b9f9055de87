#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faasim/scenario.hpp"

namespace faasim {

struct SweepCell {
    std::uint32_t concurrency = 0;
    std::uint32_t runs = 0;
    double throughput_mean = 0.0;
    double throughput_std = 0.0;
    double p99_mean_us = 0.0;
};

// One independent engine per (concurrency, seed) instance; instances run in
// parallel and are aggregated per concurrency after all complete.
std::vector<SweepCell> run_sweep(const Scenario& base, const std::vector<std::uint64_t>& seeds,
                                 const std::vector<std::uint32_t>& concurrencies,
                                 unsigned max_parallel = 0);

std::string sweep_csv(const std::vector<SweepCell>& cells);

}  // namespace faasim
