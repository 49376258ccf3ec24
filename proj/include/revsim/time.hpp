#pragma once

#include <cstdint>

namespace revsim {

// Simulation time: integer milliseconds since the scenario epoch.
// Integer ticks keep event ordering exact; no floating-point drift.
using SimTime = std::int64_t;
using Duration = std::int64_t;

inline constexpr Duration kSecond = 1000;
inline constexpr Duration kMinute = 60 * kSecond;
inline constexpr Duration kHour = 60 * kMinute;
inline constexpr Duration kDay = 24 * kHour;

inline constexpr double to_seconds(Duration d) { return static_cast<double>(d) / 1000.0; }
inline constexpr double to_hours(Duration d) { return static_cast<double>(d) / 3600000.0; }

}  // namespace revsim
