#include "faasim/autoscaler.hpp"

#include <algorithm>
#include <cmath>

namespace faasim {

namespace {
std::uint32_t clamp_u32(double v, std::uint32_t lo, std::uint32_t hi) {
    if (v < lo) return lo;
    if (v > hi) return hi;
    return static_cast<std::uint32_t>(v);
}
}  // namespace

std::uint32_t hpa_desired(const HpaConfig& cfg, std::uint32_t current_ready, double mean_metric,
                          std::uint32_t current_desired) {
    if (current_ready == 0) return current_desired;  // nothing to measure yet
    double ratio = mean_metric / cfg.target_fraction;
    if (std::abs(ratio - 1.0) <= cfg.tolerance) return current_desired;
    double desired = std::ceil(static_cast<double>(current_ready) * ratio);
    return clamp_u32(desired, cfg.min_replicas, cfg.max_replicas);
}

std::uint32_t kpa_desired(const KpaConfig& cfg, AutoscalerState& state, double sample,
                          SimTime now) {
    state.window.push_back({now, sample});
    SimTime window_start = now - cfg.stable_window;
    while (!state.window.empty() && state.window.front().t <= window_start) {
        state.window.pop_front();
    }
    // Zero-padded average: always divide by the full window's sample count,
    // so a fresh step input ramps in proportionally.
    auto slots = static_cast<double>(cfg.stable_window.micros / cfg.tick.micros);
    double sum = 0.0;
    for (const auto& p : state.window) sum += p.value;
    double divisor = std::max(slots, static_cast<double>(state.window.size()));
    double avg = divisor > 0 ? sum / divisor : 0.0;

    if (avg <= 0.0) {
        if (!state.zero_since) state.zero_since = now;
        if (cfg.scale_to_zero && now - *state.zero_since >= cfg.scale_to_zero_grace) return 0;
    } else {
        state.zero_since.reset();
    }

    double desired = std::ceil(avg / cfg.target);
    double rate_cap = cfg.max_scale_up_rate *
                      static_cast<double>(std::max<std::uint32_t>(state.current_desired, 1));
    desired = std::min(desired, rate_cap);
    return clamp_u32(desired, cfg.min_scale, cfg.max_scale);
}

std::uint32_t rps_alert_step(const RpsAlertConfig& cfg) {
    return static_cast<std::uint32_t>(
        std::ceil(cfg.scale_factor_percent / 100.0 * static_cast<double>(cfg.max_replicas)));
}

RpsAlertDecision rps_alert_evaluate(const RpsAlertConfig& cfg, AutoscalerState& state, double rps,
                                    std::uint32_t current_desired) {
    RpsAlertDecision d;
    if (rps > cfg.rps_threshold) {
        if (state.alert_pending || state.alert_firing) {
            state.alert_firing = true;
            d.fire = true;
            d.step = 1;
        } else {
            state.alert_pending = true;
        }
        return d;
    }
    state.alert_pending = false;
    if (state.alert_firing) state.alert_firing = false;
    if (current_desired > cfg.min_replicas) {
        // Resolved window: step back toward min, one step per window.
        d.fire = true;
        d.step = -1;
    }
    return d;
}

}  // namespace faasim
