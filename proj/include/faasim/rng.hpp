#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "faasim/time.hpp"

namespace faasim {

// One deterministic draw stream per stochastic subsystem. Each stream is an
// mt19937_64 seeded from (seed, stream label), with the uniform mappings done
// by hand: the raw mt19937_64 sequence is pinned by the standard, while
// std::uniform_*_distribution is not portable across library implementations.
class RngStream {
public:
    RngStream() : RngStream(0, "default") {}

    RngStream(std::uint64_t seed, std::string_view stream_id)
        : gen_(mix(seed, fnv1a(stream_id))) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). n must be > 0; modulo bias is irrelevant at
    // simulation scale.
    std::uint64_t next_below(std::uint64_t n) { return gen_() % n; }

    // Uniform in [-1, 1).
    double next_signed() { return next_double() * 2.0 - 1.0; }

    // Exponential with the given rate (for Poisson arrivals).
    double next_exponential(double rate) {
        double u = next_double();
        return -std::log(1.0 - u) / rate;
    }

    // Duration scaled by a multiplicative uniform +/- fraction.
    SimTime jittered(SimTime base, double fraction) {
        if (fraction <= 0.0 || base.micros == 0) return base;
        double scaled = static_cast<double>(base.micros) * (1.0 + fraction * next_signed());
        auto us = static_cast<std::int64_t>(std::llround(scaled));
        return SimTime{us < 0 ? 0 : us};
    }

private:
    static constexpr std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }

    static constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t label) {
        // splitmix64 finalizer over seed ^ label
        std::uint64_t z = seed ^ label;
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

// The fixed set of streams used by a run. Adding a stochastic feature must
// never perturb another subsystem's draws, so each consumer owns its stream.
struct RngSet {
    RngStream workload;
    RngStream load_balancer;
    RngStream netfilter;
    RngStream jitter;

    explicit RngSet(std::uint64_t seed)
        : workload(seed, "workload"),
          load_balancer(seed, "load-balancer"),
          netfilter(seed, "netfilter"),
          jitter(seed, "jitter") {}
};

}  // namespace faasim
