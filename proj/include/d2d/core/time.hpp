#pragma once

#include <absl/time/civil_time.h>
#include <absl/time/time.h>

#include <chrono>
#include <cstdint>
#include <string>

#include "d2d/core/period.hpp"
#include "d2d/error.hpp"

namespace d2d {

using Seconds = std::chrono::seconds;
using Date = absl::CivilDay;
using Instant = absl::Time;
using TimeZone = absl::TimeZone;

inline Seconds minutes(std::int64_t m) { return Seconds(m * 60); }

inline Seconds seconds_between(Instant from, Instant to) {
  return Seconds(absl::ToInt64Seconds(to - from));
}

inline Instant operator+(Instant t, Seconds s) { return t + absl::Seconds(s.count()); }
inline Instant operator-(Instant t, Seconds s) { return t - absl::Seconds(s.count()); }

/// Resolves an IANA name ("Europe/Paris"). Throws InputError when unknown.
inline TimeZone load_time_zone(const std::string& name) {
  TimeZone tz;
  if (name.empty() || !absl::LoadTimeZone(name, &tz))
    throw InputError("unresolvable time zone '" + name + "'");
  return tz;
}

/// Local calendar date and traffic period of an instant.
struct LocalSlot {
  Date date;
  DayPeriod period;
  int minute_of_day;
};

inline LocalSlot local_slot(Instant t, const TimeZone& tz) {
  const absl::CivilSecond cs = absl::ToCivilSecond(t, tz);
  const int minute = cs.hour() * 60 + cs.minute();
  return {Date(cs), classify_period(minute), minute};
}

inline std::string format_date(Date d) { return absl::FormatCivilTime(d); }

inline std::string format_local(Instant t, const TimeZone& tz) {
  return absl::FormatTime("%Y-%m-%dT%H:%M:%S", t, tz);
}

} // namespace d2d
