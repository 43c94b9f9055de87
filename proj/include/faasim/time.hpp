#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace faasim {

// Virtual time, integer microseconds since simulation start. Integer so that
// event ordering never depends on float rounding: the smallest duration in
// the default profiles (0.001 ms) is exactly 1 us.
struct SimTime {
    std::int64_t micros = 0;

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime rhs) const { return {micros + rhs.micros}; }
    constexpr SimTime operator-(SimTime rhs) const { return {micros - rhs.micros}; }
    SimTime& operator+=(SimTime rhs) {
        micros += rhs.micros;
        return *this;
    }

    constexpr double seconds() const { return static_cast<double>(micros) / 1e6; }
    constexpr double millis() const { return static_cast<double>(micros) / 1e3; }

    static constexpr SimTime from_us(std::int64_t us) { return {us}; }
    static SimTime from_ms(double ms) { return {std::llround(ms * 1e3)}; }
    static SimTime from_seconds(double s) { return {std::llround(s * 1e6)}; }
};

inline constexpr SimTime kNoTime{-1};

}  // namespace faasim
