#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/core/types.hpp"
#include "d2d/ingest/csv.hpp"
#include "d2d/ingest/ride_stats.hpp"
#include "d2d/ingest/stations.hpp"

namespace d2d {

inline constexpr std::string_view kWeeklyScheduleHeader =
    "mode_id,dep_station,arr_station,days,dep_time,arr_time";

/// One line of a weekly timetable. `days` runs Monday..Sunday.
struct WeeklyScheduleRow {
  std::string mode_id;
  std::string dep_station;
  std::string arr_station;
  std::array<bool, 7> days{};
  int dep_minute = 0;
  int arr_minute = 0;

  /// Arrival clock earlier than departure clock: arrives the next day.
  bool overnight() const { return arr_minute < dep_minute; }
};

struct DateRange {
  Date first;
  Date last;

  bool empty() const { return last < first; }
  bool contains(Date d) const { return !(d < first) && !(last < d); }
  std::int64_t days() const { return empty() ? 0 : (last - first) + 1; }
};

/// Monday = 0 ... Sunday = 6.
inline int weekday_index(Date d) {
  switch (absl::GetWeekday(d)) {
  case absl::Weekday::monday: return 0;
  case absl::Weekday::tuesday: return 1;
  case absl::Weekday::wednesday: return 2;
  case absl::Weekday::thursday: return 3;
  case absl::Weekday::friday: return 4;
  case absl::Weekday::saturday: return 5;
  case absl::Weekday::sunday: return 6;
  }
  return 0;
}

inline std::vector<WeeklyScheduleRow> read_weekly_schedule(std::istream& in,
                                                           const std::string& source,
                                                           LoadReport* report = nullptr) {
  csv::Reader rd(in, source);
  rd.expect_header(kWeeklyScheduleHeader);
  std::vector<WeeklyScheduleRow> out;
  std::vector<std::string> f;
  while (rd.next(f, 6)) {
    WeeklyScheduleRow r;
    r.mode_id = f[0];
    r.dep_station = f[1];
    r.arr_station = f[2];
    if (r.mode_id.empty() || r.dep_station.empty() || r.arr_station.empty())
      rd.fail("empty mode or station");
    if (f[3].size() != 7 || f[3].find_first_not_of("01") != std::string::npos)
      rd.fail("days must be 7 characters of 0/1");
    bool any = false;
    for (int i = 0; i < 7; ++i) any |= (r.days[i] = f[3][i] == '1');
    if (!any) rd.fail("days mask has no weekday set");
    auto dep = csv::parse_clock(f[4]), arr = csv::parse_clock(f[5]);
    if (!dep || !arr) rd.fail("times must be HH:MM");
    r.dep_minute = *dep;
    r.arr_minute = *arr;
    out.push_back(std::move(r));
  }
  if (report) *report = {out.size(), rd.skipped()};
  return out;
}

inline std::vector<WeeklyScheduleRow> load_weekly_schedule(const std::string& path,
                                                           LoadReport* report = nullptr) {
  auto in = csv::open(path);
  return read_weekly_schedule(in, path, report);
}

inline void write_weekly_schedule(std::ostream& out, const std::vector<WeeklyScheduleRow>& rows) {
  out << kWeeklyScheduleHeader << '\n';
  char buf[16];
  for (const auto& r : rows) {
    out << r.mode_id << ',' << r.dep_station << ',' << r.arr_station << ',';
    for (bool b : r.days) out << (b ? '1' : '0');
    std::snprintf(buf, sizeof buf, "%02d:%02d", r.dep_minute / 60, r.dep_minute % 60);
    out << ',' << buf;
    std::snprintf(buf, sizeof buf, "%02d:%02d", r.arr_minute / 60, r.arr_minute % 60);
    out << ',' << buf << '\n';
  }
}

/// One on-time segment per (row, service date). Segments are ordered by row,
/// then date. Overnight rows arrive on the following local date.
inline std::vector<ScheduledSegment> expand_weekly_schedule(
    const std::vector<WeeklyScheduleRow>& rows, const DateRange& range,
    const StationTable& stations) {
  if (range.empty()) throw std::invalid_argument("expand_weekly_schedule: empty date range");
  std::vector<ScheduledSegment> out;
  for (const auto& r : rows) {
    bool any = false;
    for (bool b : r.days) any |= b;
    if (!any) throw InputError("weekly schedule row " + r.mode_id + " has no weekday set");
    const StationRef dep = stations.require(r.dep_station);
    const StationRef arr = stations.require(r.arr_station);
    for (Date d = range.first; !(range.last < d); ++d) {
      if (!r.days[weekday_index(d)]) continue;
      const Date arr_day = r.overnight() ? d + 1 : d;
      ScheduledSegment s;
      char hhmm[16];
      std::snprintf(hhmm, sizeof hhmm, "%02d%02d", r.dep_minute / 60, r.dep_minute % 60);
      s.segment_id = r.mode_id + ":" + r.dep_station + "-" + r.arr_station + ":" + format_date(d) +
                     "T" + hhmm;
      s.mode_id = r.mode_id;
      s.dep_station = dep;
      s.arr_station = arr;
      s.sched_dep = absl::FromCivil(absl::CivilMinute(d) + r.dep_minute, dep->tz);
      s.sched_arr = absl::FromCivil(absl::CivilMinute(arr_day) + r.arr_minute, arr->tz);
      if (s.sched_arr <= s.sched_dep)
        throw InputError("weekly schedule row " + r.mode_id + " arrives before it departs on " +
                         format_date(d));
      s.actual_dep = s.sched_dep;
      s.actual_arr = s.sched_arr;
      out.push_back(std::move(s));
    }
  }
  return out;
}

} // namespace d2d
