/*
 * Copyright 2026 The ltesim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "ltesim/errors.hpp"

namespace ltesim {

enum class TimeUnit : std::uint8_t { Nanoseconds, Microseconds, Milliseconds, Seconds };

constexpr std::uint64_t nanosecondsPer(TimeUnit unit) noexcept {
    switch (unit) {
        case TimeUnit::Nanoseconds: return 1;
        case TimeUnit::Microseconds: return 1'000;
        case TimeUnit::Milliseconds: return 1'000'000;
        case TimeUnit::Seconds: return 1'000'000'000;
    }
    return 1;
}

/**
 * Simulation timestamp in whole nanoseconds.
 *
 * Arithmetic is checked: results that would leave [0, 2^64) throw
 * SimTimeOverflow instead of wrapping.
 */
class SimTime {
public:
    constexpr SimTime() noexcept = default;

    static constexpr SimTime fromNanoseconds(std::uint64_t ns) noexcept { return SimTime(ns); }

    static SimTime fromUnits(std::uint64_t value, TimeUnit unit) {
        const std::uint64_t scale = nanosecondsPer(unit);
        if (value > std::numeric_limits<std::uint64_t>::max() / scale) {
            throw SimTimeOverflow("duration " + std::to_string(value) + " does not fit in 64-bit nanoseconds");
        }
        return SimTime(value * scale);
    }

    static constexpr SimTime max() noexcept { return SimTime(std::numeric_limits<std::uint64_t>::max()); }

    constexpr std::uint64_t nanoseconds() const noexcept { return ns_; }
    constexpr bool isZero() const noexcept { return ns_ == 0; }

    friend constexpr auto operator<=>(SimTime, SimTime) noexcept = default;

    friend SimTime operator+(SimTime a, SimTime b) {
        if (a.ns_ > std::numeric_limits<std::uint64_t>::max() - b.ns_) {
            throw SimTimeOverflow("SimTime addition overflows");
        }
        return SimTime(a.ns_ + b.ns_);
    }

    friend SimTime operator-(SimTime a, SimTime b) {
        if (b.ns_ > a.ns_) {
            throw SimTimeOverflow("SimTime subtraction would go negative");
        }
        return SimTime(a.ns_ - b.ns_);
    }

    SimTime& operator+=(SimTime other) { return *this = *this + other; }

    /// Decimal seconds, no exponent, trailing zeros trimmed ("0", "0.01", "1.5").
    std::string toSecondsString() const;

private:
    constexpr explicit SimTime(std::uint64_t ns) noexcept : ns_(ns) {}

    std::uint64_t ns_ = 0;
};

namespace literals {

constexpr SimTime operator""_ns(unsigned long long v) { return SimTime::fromNanoseconds(v); }
constexpr SimTime operator""_us(unsigned long long v) { return SimTime::fromNanoseconds(v * 1'000ULL); }
constexpr SimTime operator""_ms(unsigned long long v) { return SimTime::fromNanoseconds(v * 1'000'000ULL); }
constexpr SimTime operator""_s(unsigned long long v) { return SimTime::fromNanoseconds(v * 1'000'000'000ULL); }

}  // namespace literals

}  // namespace ltesim
