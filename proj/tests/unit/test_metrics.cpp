#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "faasim/metrics.hpp"
#include "faasim/rng.hpp"

using namespace faasim;

namespace {

// Exact oracle: nearest-rank percentile on the sorted sample.
std::int64_t sorted_percentile_us(std::vector<std::int64_t> v, double p) {
    std::sort(v.begin(), v.end());
    auto rank = static_cast<std::size_t>(
        std::ceil(p / 100.0 * static_cast<double>(v.size())));
    if (rank == 0) rank = 1;
    return v[rank - 1];
}

}  // namespace

TEST_CASE("zero latency lands in the first bucket") {
    LatencyHistogram h;
    h.record(SimTime{0});
    CHECK(h.total() == 1);
    CHECK(h.count_at(0) == 1);
    CHECK(h.percentile(50).micros == 1);  // upper edge of the sub-1us bucket
}

TEST_CASE("values beyond the grid clamp into the last bucket") {
    LatencyHistogram h;
    h.record(SimTime::from_seconds(120));
    CHECK(h.count_at(h.bucket_count() - 1) == 1);
    CHECK(h.max() == SimTime::from_seconds(120));
    CHECK(h.percentile(100).micros == LatencyHistogram::kMaxUs);
}

TEST_CASE("bucket counts match brute-force binning on 1000 uniform values") {
    LatencyHistogram h;
    RngStream rng(11, "test");
    std::vector<std::int64_t> values;
    for (int i = 0; i < 1000; ++i) {
        auto us = static_cast<std::int64_t>(rng.next_below(1'000'000));
        values.push_back(us);
        h.record(SimTime{us});
    }
    // brute force: count per bucket by scanning edges
    std::vector<std::uint64_t> expected(h.bucket_count(), 0);
    for (auto us : values) {
        for (std::size_t b = 0; b < h.bucket_count(); ++b) {
            if (us >= h.bucket_low_us(b) && us < h.bucket_high_us(b)) {
                ++expected[b];
                break;
            }
        }
    }
    for (std::size_t b = 0; b < h.bucket_count(); ++b) {
        REQUIRE(h.count_at(b) == expected[b]);
    }
}

TEST_CASE("all-equal samples: p50 bucket contains the value") {
    LatencyHistogram h;
    for (int i = 0; i < 100; ++i) h.record(SimTime::from_ms(5.0));
    SimTime p50 = h.percentile(50);
    CHECK(p50.micros >= 5000);
    CHECK(static_cast<double>(p50.micros) <= 5000.0 * LatencyHistogram::kRatio + 1);
}

TEST_CASE("percentiles stay within one bucket ratio of the exact oracle") {
    LatencyHistogram h;
    RngStream rng(77, "test");
    std::vector<std::int64_t> values;
    for (int i = 0; i < 10'000; ++i) {
        auto us = 1000 + static_cast<std::int64_t>(rng.next_below(99'000));  // 1..100 ms
        values.push_back(us);
        h.record(SimTime{us});
    }
    for (double p : {50.0, 90.0, 99.0, 99.9}) {
        double exact = static_cast<double>(sorted_percentile_us(values, p));
        double est = static_cast<double>(h.percentile(p).micros);
        CHECK(est >= exact);                    // upper-edge estimate never undershoots
        CHECK(est <= exact * 1.05 + 1);         // and stays within the 5% bucket bound
    }
}

TEST_CASE("percentile is monotone in p") {
    LatencyHistogram h;
    RngStream rng(5, "test");
    for (int i = 0; i < 5000; ++i) h.record(SimTime{static_cast<std::int64_t>(rng.next_below(10'000'000))});
    SimTime last{0};
    for (double p = 1.0; p <= 100.0; p += 0.5) {
        SimTime v = h.percentile(p);
        CHECK(v >= last);
        last = v;
    }
}

TEST_CASE("p100 covers the observed max") {
    LatencyHistogram h;
    h.record(SimTime::from_ms(3.0));
    h.record(SimTime::from_ms(42.0));
    CHECK(h.percentile(100).micros >= h.max().micros);
}

TEST_CASE("empty histogram percentile is an error") {
    LatencyHistogram h;
    CHECK_THROWS_AS(h.percentile(50), std::domain_error);
}

TEST_CASE("full-fraction scrape samples every pod and bills it") {
    MetricsCollector mc({SimTime::from_seconds(2), 512, 1.0});
    std::vector<MetricsCollector::PodView> pods;
    for (std::uint64_t i = 1; i <= 10; ++i) pods.push_back({i, 0.5, 1000});
    TimelineSample s = mc.scrape(pods, 0, 20, SimTime::from_seconds(2));
    CHECK(s.ready_pods == 10);
    CHECK(s.scrape_bytes == 10 * 512);
    CHECK(s.mean_cpu == doctest::Approx(0.5));
    CHECK(s.throughput_rps == doctest::Approx(10.0));
}

TEST_CASE("half-fraction scrape refreshes every pod within two rounds") {
    MetricsCollector mc({SimTime::from_seconds(2), 100, 0.5});
    std::vector<MetricsCollector::PodView> pods;
    for (std::uint64_t i = 1; i <= 10; ++i) pods.push_back({i, 1.0, 1000});
    mc.scrape(pods, 0, 0, SimTime::from_seconds(2));
    CHECK(mc.scrape_bytes() == 5 * 100);
    mc.scrape(pods, 0, 0, SimTime::from_seconds(4));
    CHECK(mc.scrape_bytes() == 10 * 100);
    for (std::uint64_t i = 1; i <= 10; ++i) {
        CHECK(mc.last_refreshed(i).micros >= SimTime::from_seconds(2).micros);
    }
    // every pod now carries a fresh value
    CHECK(mc.last_mean_cpu() == doctest::Approx(1.0));
}

TEST_CASE("scrape with zero pods is empty and free") {
    MetricsCollector mc({SimTime::from_seconds(2), 512, 1.0});
    TimelineSample s = mc.scrape({}, 0, 0, SimTime::from_seconds(2));
    CHECK(s.ready_pods == 0);
    CHECK(s.scrape_bytes == 0);
    CHECK(s.mean_cpu == 0.0);
}

TEST_CASE("halving the sampling fraction halves scrape traffic within one pod") {
    auto bytes_for = [](double fraction) {
        MetricsCollector mc({SimTime::from_seconds(2), 256, fraction});
        std::vector<MetricsCollector::PodView> pods;
        for (std::uint64_t i = 1; i <= 9; ++i) pods.push_back({i, 0.2, 100});
        for (int round = 1; round <= 10; ++round) {
            mc.scrape(pods, 0, 0, SimTime::from_seconds(2.0 * round));
        }
        return mc.scrape_bytes();
    };
    std::uint64_t full = bytes_for(1.0);
    std::uint64_t half = bytes_for(0.5);
    // per scrape: 9 vs 5 pods (ceil), i.e. half +/- one pod
    CHECK(half * 2 >= full);
    CHECK(half * 2 - full <= 10ull * 256);
}

TEST_CASE("unsampled pods keep their last-known values") {
    MetricsCollector mc({SimTime::from_seconds(2), 0, 0.5});
    std::vector<MetricsCollector::PodView> pods{{1, 1.0, 100}, {2, 1.0, 100}};
    mc.scrape(pods, 0, 0, SimTime{2});
    // pod 2 not yet sampled: contributes 0 cpu
    CHECK(mc.last_mean_cpu() == doctest::Approx(0.5));
    pods[0].cpu_fraction = 0.0;
    pods[1].cpu_fraction = 0.0;
    mc.scrape(pods, 0, 0, SimTime{4});
    // pod 2 refreshed to 0, pod 1 still shows the stale 1.0
    CHECK(mc.last_mean_cpu() == doctest::Approx(0.5));
}
