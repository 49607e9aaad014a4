#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/core/types.hpp"
#include "d2d/ingest/csv.hpp"
#include "d2d/ingest/ride_stats.hpp"
#include "d2d/ingest/stations.hpp"

namespace d2d {

inline constexpr std::string_view kSegmentsHeader =
    "segment_id,mode_id,dep_station,arr_station,sched_dep,actual_dep,sched_arr,actual_arr,"
    "cancelled";

inline std::string format_local_timestamp(Instant t, const TimeZone& tz) {
  const absl::CivilSecond cs = absl::ToCivilSecond(t, tz);
  return cs.second() == 0 ? absl::FormatCivilTime(absl::CivilMinute(cs))
                          : absl::FormatCivilTime(cs);
}

/// Reads flight/train movements with actual times. Local timestamps are
/// zoned through the departure or arrival station.
inline std::vector<ScheduledSegment> read_segments(std::istream& in, const std::string& source,
                                                   const StationTable& stations,
                                                   bool on_time_mode = false,
                                                   LoadReport* report = nullptr) {
  csv::Reader rd(in, source);
  rd.expect_header(kSegmentsHeader);
  std::vector<ScheduledSegment> out;
  std::set<std::string, std::less<>> seen;
  std::vector<std::string> f;

  auto stamp = [&](const std::string& text, const Station& st, const char* what) {
    auto cs = csv::parse_local_timestamp(text);
    if (!cs) rd.fail(std::string("bad ") + what + " timestamp '" + text + "'");
    return absl::FromCivil(*cs, st.tz);
  };

  while (rd.next(f, 9)) {
    ScheduledSegment s;
    s.segment_id = f[0];
    s.mode_id = f[1];
    if (s.segment_id.empty() || s.mode_id.empty()) rd.fail("empty segment_id or mode_id");
    if (!seen.insert(s.segment_id).second) rd.fail("duplicate segment_id '" + s.segment_id + "'");
    s.dep_station = stations.get(f[2]);
    s.arr_station = stations.get(f[3]);
    if (!s.dep_station) rd.fail("unknown dep_station '" + f[2] + "'");
    if (!s.arr_station) rd.fail("unknown arr_station '" + f[3] + "'");
    if (f[8] == "1")
      s.cancelled = true;
    else if (f[8] != "0")
      rd.fail("cancelled must be 0 or 1");

    s.sched_dep = stamp(f[4], *s.dep_station, "sched_dep");
    s.sched_arr = stamp(f[6], *s.arr_station, "sched_arr");
    if (s.sched_arr <= s.sched_dep) rd.fail("sched_arr is not after sched_dep");

    if (!f[5].empty()) s.actual_dep = stamp(f[5], *s.dep_station, "actual_dep");
    if (!f[7].empty()) s.actual_arr = stamp(f[7], *s.arr_station, "actual_arr");
    if (s.actual_dep.has_value() != s.actual_arr.has_value())
      rd.fail("actual_dep and actual_arr must both be present or both empty");
    if (!s.actual_dep && !s.cancelled && !on_time_mode)
      rd.fail("actual times missing on a non-cancelled segment");
    if (s.actual_dep && *s.actual_arr <= *s.actual_dep)
      rd.fail("actual_arr is not after actual_dep");
    out.push_back(std::move(s));
  }
  if (report) *report = {out.size(), rd.skipped()};
  return out;
}

inline std::vector<ScheduledSegment> load_segments_actuals(const std::string& path,
                                                           const StationTable& stations,
                                                           bool on_time_mode = false,
                                                           LoadReport* report = nullptr) {
  auto in = csv::open(path);
  return read_segments(in, path, stations, on_time_mode, report);
}

inline void write_segments(std::ostream& out, const std::vector<ScheduledSegment>& segs) {
  out << kSegmentsHeader << '\n';
  for (const auto& s : segs) {
    const auto& dep = *s.dep_station;
    const auto& arr = *s.arr_station;
    out << s.segment_id << ',' << s.mode_id << ',' << dep.station_id << ',' << arr.station_id
        << ',' << format_local_timestamp(s.sched_dep, dep.tz) << ','
        << (s.actual_dep ? format_local_timestamp(*s.actual_dep, dep.tz) : "") << ','
        << format_local_timestamp(s.sched_arr, arr.tz) << ','
        << (s.actual_arr ? format_local_timestamp(*s.actual_arr, arr.tz) : "") << ','
        << (s.cancelled ? 1 : 0) << '\n';
  }
}

} // namespace d2d
