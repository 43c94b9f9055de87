#include <doctest.h>

#include <vector>

#include "faasim/autoscaler.hpp"

using namespace faasim;

TEST_CASE("hpa doubles saturated pods until the max clamp") {
    HpaConfig cfg;  // target 0.5, min 1, max 10
    std::uint32_t ready = 1;
    std::vector<std::uint32_t> trace{ready};
    for (int step = 0; step < 4; ++step) {
        std::uint32_t desired = hpa_desired(cfg, ready, 1.0, ready);
        trace.push_back(desired);
        ready = desired;
    }
    CHECK(trace == std::vector<std::uint32_t>{1, 2, 4, 8, 10});
}

TEST_CASE("hpa holds within tolerance") {
    HpaConfig cfg;
    CHECK(hpa_desired(cfg, 4, 0.5, 4) == 4);    // exactly on target
    CHECK(hpa_desired(cfg, 4, 0.54, 4) == 4);   // |ratio-1| = 0.08 <= 0.1
    CHECK(hpa_desired(cfg, 4, 0.45, 4) == 4);   // -0.1, boundary of tolerance
}

TEST_CASE("hpa shrink arithmetic: ceil(4 * 0.3/0.5) = 3") {
    HpaConfig cfg;
    CHECK(hpa_desired(cfg, 4, 0.3, 4) == 3);
}

TEST_CASE("hpa with no ready pods keeps the current desired") {
    HpaConfig cfg;
    CHECK(hpa_desired(cfg, 0, 0.0, 3) == 3);
}

TEST_CASE("kpa ramps a step input along the zero-padded window") {
    KpaConfig cfg;  // target 10, tick 2s, window 10s, min 1, max 10
    AutoscalerState st;
    st.current_desired = 1;
    // tick at t=0 samples the pre-arrival state
    CHECK(kpa_desired(cfg, st, 0.0, SimTime::from_seconds(0)) == 1);
    std::vector<std::uint32_t> trace;
    for (int k = 1; k <= 5; ++k) {
        std::uint32_t desired = kpa_desired(cfg, st, 100.0, SimTime::from_seconds(2.0 * k));
        trace.push_back(desired);
        st.current_desired = desired;
    }
    CHECK(trace == std::vector<std::uint32_t>{2, 4, 6, 8, 10});
}

TEST_CASE("kpa holds when the average sits at target") {
    KpaConfig cfg;
    AutoscalerState st;
    st.current_desired = 1;
    std::uint32_t desired = 1;
    for (int k = 0; k <= 10; ++k) {
        desired = kpa_desired(cfg, st, 10.0, SimTime::from_seconds(2.0 * k));
        st.current_desired = desired;
    }
    // window fully populated with 10s: avg = 10, target 10 -> one pod
    CHECK(desired == 1);
}

TEST_CASE("kpa scale-up per tick respects max_scale_up_rate") {
    KpaConfig cfg;
    cfg.max_scale_up_rate = 2.0;
    cfg.max_scale = 100;
    AutoscalerState st;
    st.current_desired = 1;
    // huge spike: rate cap holds the step to 2 x current
    std::uint32_t desired = kpa_desired(cfg, st, 10'000.0, SimTime::from_seconds(20));
    CHECK(desired == 2);
}

TEST_CASE("kpa scale-to-zero waits out the grace period") {
    KpaConfig cfg;
    cfg.scale_to_zero = true;
    cfg.scale_to_zero_grace = SimTime::from_seconds(6);
    AutoscalerState st;
    st.current_desired = 1;
    CHECK(kpa_desired(cfg, st, 0.0, SimTime::from_seconds(2)) == 1);   // zero noticed
    CHECK(kpa_desired(cfg, st, 0.0, SimTime::from_seconds(4)) == 1);   // still in grace
    CHECK(kpa_desired(cfg, st, 0.0, SimTime::from_seconds(8)) == 0);   // grace elapsed
}

TEST_CASE("rps alert: pending one window, then fires each window over threshold") {
    RpsAlertConfig cfg;  // threshold 10, factor 10% of max 10 -> +1
    AutoscalerState st;
    CHECK(rps_alert_step(cfg) == 1);

    RpsAlertDecision d = rps_alert_evaluate(cfg, st, 100.0, 1);
    CHECK_FALSE(d.fire);  // pending
    int fires = 0;
    std::uint32_t desired = 1;
    for (int w = 0; w < 9; ++w) {
        d = rps_alert_evaluate(cfg, st, 100.0, desired);
        REQUIRE(d.fire);
        REQUIRE(d.step == 1);
        desired += rps_alert_step(cfg);
        ++fires;
    }
    CHECK(fires == 9);
    CHECK(desired == 10);
}

TEST_CASE("rps alert quiet below threshold") {
    RpsAlertConfig cfg;
    AutoscalerState st;
    RpsAlertDecision d = rps_alert_evaluate(cfg, st, 5.0, 1);
    CHECK_FALSE(d.fire);
    CHECK_FALSE(st.alert_pending);
}

TEST_CASE("rps alert steps back toward min after the load resolves") {
    RpsAlertConfig cfg;
    AutoscalerState st;
    rps_alert_evaluate(cfg, st, 100.0, 1);          // pending
    rps_alert_evaluate(cfg, st, 100.0, 1);          // firing
    RpsAlertDecision d = rps_alert_evaluate(cfg, st, 2.0, 5);
    CHECK(d.fire);
    CHECK(d.step == -1);
    // at min: nothing to undo
    d = rps_alert_evaluate(cfg, st, 2.0, 1);
    CHECK_FALSE(d.fire);
}
