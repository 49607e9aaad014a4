#pragma once

#include <algorithm>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "d2d/core/types.hpp"
#include "d2d/error.hpp"

namespace d2d {

/// Result of a ride-time lookup. `fallback` is set when only the whole-day
/// aggregate existed for the requested period.
struct RideHit {
  RideVariants ride;
  bool fallback = false;
};

template <class L>
concept RideLookup = requires(const L& l, std::string_view from, std::string_view to, Date date,
                              DayPeriod p) {
  { l.lookup(from, to, date, p) } -> std::same_as<std::optional<RideHit>>;
};

/// Which end of the door-to-door trip decides its day and period.
enum class GroupingInstant { DoorArrival, DoorDeparture };

struct TripOptions {
  /// Treat missing actual times as equal to the scheduled ones.
  bool on_time_mode = false;
  GroupingInstant grouping = GroupingInstant::DoorArrival;
};

/// Evaluates one door-to-door trip from `origin` to `dest` through `seg`.
///
/// The traveller reaches the departure station exactly t_sec before the
/// scheduled departure; that deadline picks the period of the access ride.
/// The egress ride starts once the passenger has left the arrival station
/// (actual arrival + t_arr). Delays at departure add to t_dep as t_wait.
template <RideLookup Rides>
TripRecord compute_trip(const ScheduledSegment& seg, const Zone& origin, const Zone& dest,
                        const DwellProfile& dwell_dep, const DwellProfile& dwell_arr,
                        const Rides& rides, const TripOptions& opts = {}) {
  if (seg.cancelled)
    throw std::invalid_argument("compute_trip: segment " + seg.segment_id + " is cancelled");
  if (!seg.dep_station || !seg.arr_station)
    throw std::invalid_argument("compute_trip: segment " + seg.segment_id + " lacks stations");
  if (dwell_dep.t_sec_departure.count() < 0 || dwell_arr.t_arr.count() < 0)
    throw std::invalid_argument("compute_trip: negative dwell time");

  const bool has_actuals = seg.actual_dep.has_value() && seg.actual_arr.has_value();
  if (!has_actuals && !opts.on_time_mode)
    throw std::invalid_argument("compute_trip: segment " + seg.segment_id +
                                " has no actual times and on-time mode is off");
  const Instant actual_dep = seg.actual_dep.value_or(seg.sched_dep);
  const Instant actual_arr = seg.actual_arr.value_or(seg.sched_arr);
  if (actual_arr <= actual_dep)
    throw std::invalid_argument("compute_trip: segment " + seg.segment_id +
                                " arrives before it departs");

  const Station& dep = *seg.dep_station;
  const Station& arr = *seg.arr_station;

  TripRecord rec;
  rec.segment_id = seg.segment_id;
  rec.mode_id = seg.mode_id;
  rec.dep_station_id = dep.station_id;
  rec.arr_station_id = arr.station_id;
  rec.origin_zone = origin.zone_id;
  rec.dest_zone = dest.zone_id;

  TripPhaseTimes& ph = rec.phases;
  ph.t_in = seconds_between(actual_dep, actual_arr);
  ph.t_wait = std::max(Seconds(0), seconds_between(seg.sched_dep, actual_dep));
  ph.t_dep = dwell_dep.t_sec_departure + ph.t_wait;
  ph.t_arr = dwell_arr.t_arr;

  const Instant station_deadline = seg.sched_dep - dwell_dep.t_sec_departure;
  const LocalSlot access = local_slot(station_deadline, dep.tz);
  const auto to_hit = rides.lookup(origin.zone_id, dep.zone_id, access.date, access.period);
  if (!to_hit)
    throw TripNotComputable("no ride time " + origin.zone_id + " -> " + dep.zone_id + " on " +
                            format_date(access.date));

  const Instant egress_start = actual_arr + dwell_arr.t_arr;
  const LocalSlot egress = local_slot(egress_start, arr.tz);
  const auto from_hit = rides.lookup(arr.zone_id, dest.zone_id, egress.date, egress.period);
  if (!from_hit)
    throw TripNotComputable("no ride time " + arr.zone_id + " -> " + dest.zone_id + " on " +
                            format_date(egress.date));

  rec.ride_to = to_hit->ride;
  rec.ride_from = from_hit->ride;
  rec.used_daily_fallback_to = to_hit->fallback;
  rec.used_daily_fallback_from = from_hit->fallback;
  ph.t_to = rec.ride_to.mean;
  ph.t_from = rec.ride_from.mean;

  const LocalSlot group =
      opts.grouping == GroupingInstant::DoorArrival
          ? local_slot(egress_start + ph.t_from, arr.tz)
          : local_slot(station_deadline - ph.t_to, dep.tz);
  rec.arrival_period = group.period;
  rec.arrival_date = group.date;
  return rec;
}

} // namespace d2d
