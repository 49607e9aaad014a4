#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace d2d {

/// Traffic periods of the ride-time source. Underlying values are the codes
/// used in ride_stats.csv; DailyOnly (0) marks whole-day fallback aggregates.
enum class DayPeriod : int {
  DailyOnly = 0,
  EarlyMorning = 1,
  AM = 2,
  Midday = 3,
  PM = 4,
  LateEvening = 5,
};

inline constexpr int kMinutesPerDay = 1440;

inline constexpr std::array<DayPeriod, 5> kDayPeriods = {
    DayPeriod::EarlyMorning, DayPeriod::AM, DayPeriod::Midday, DayPeriod::PM,
    DayPeriod::LateEvening};

/// Half-open [start, end) interval in minutes from local midnight.
struct PeriodInterval {
  int start_min;
  int end_min;
};

constexpr PeriodInterval period_interval(DayPeriod p) {
  switch (p) {
  case DayPeriod::EarlyMorning: return {0, 420};
  case DayPeriod::AM: return {420, 600};
  case DayPeriod::Midday: return {600, 960};
  case DayPeriod::PM: return {960, 1140};
  case DayPeriod::LateEvening: return {1140, 1440};
  case DayPeriod::DailyOnly: break;
  }
  throw std::invalid_argument("DailyOnly has no time interval");
}

inline DayPeriod classify_period(int local_minute) {
  if (local_minute < 0 || local_minute >= kMinutesPerDay)
    throw std::invalid_argument("classify_period: minute " + std::to_string(local_minute) +
                                " outside [0,1440)");
  for (DayPeriod p : kDayPeriods) {
    const auto iv = period_interval(p);
    if (local_minute >= iv.start_min && local_minute < iv.end_min) return p;
  }
  throw std::logic_error("period table does not cover the day"); // unreachable
}

constexpr std::string_view period_name(DayPeriod p) {
  switch (p) {
  case DayPeriod::DailyOnly: return "daily";
  case DayPeriod::EarlyMorning: return "early_morning";
  case DayPeriod::AM: return "am";
  case DayPeriod::Midday: return "midday";
  case DayPeriod::PM: return "pm";
  case DayPeriod::LateEvening: return "late_evening";
  }
  return "?";
}

constexpr int period_code(DayPeriod p) { return static_cast<int>(p); }

inline std::optional<DayPeriod> period_from_code(int code) {
  if (code < 0 || code > 5) return std::nullopt;
  return static_cast<DayPeriod>(code);
}

} // namespace d2d
