#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d2d/core/trip.hpp"
#include "d2d/core/types.hpp"
#include "d2d/ingest/ride_stats.hpp"

namespace d2d {

struct ZoneDelayDelta {
  std::string zone_id;
  std::int64_t delta_mean_s = 0;  // mean_from(actual period) - mean_from(scheduled period)
  std::int64_t delta_max_s = 0;
  double weight = 0.0;
};

/// Extra egress time caused by an arrival landing in another traffic period.
struct DelaySensitivity {
  std::string segment_id;
  DayPeriod scheduled_egress_period = DayPeriod::EarlyMorning;
  DayPeriod actual_egress_period = DayPeriod::EarlyMorning;
  Date scheduled_egress_date;
  Date actual_egress_date;
  double weighted_mean_delta_s = 0.0;
  std::int64_t max_of_max_delta_s = 0;
  std::vector<ZoneDelayDelta> zones;
  std::vector<std::string> excluded_zones;
  bool uniform_weights = false;
};

/// Passenger-side delay of one arrival. Egress periods are taken when the
/// passenger leaves the station (arrival + t_arr). Each destination zone's
/// egress ride is compared between the two periods using period-level ride
/// stats only; zones lacking either side are excluded. Weights follow
/// population density, or are uniform when any density is missing.
inline DelaySensitivity delay_sensitivity(const ScheduledSegment& seg,
                                          const DwellProfile& arr_dwell,
                                          const RideStatIndex& rides,
                                          std::span<const Zone> zones) {
  if (!seg.actual_arr)
    throw std::invalid_argument("delay_sensitivity: segment " + seg.segment_id +
                                " has no actual arrival");
  const Station& arr = *seg.arr_station;
  const LocalSlot sched = local_slot(seg.sched_arr + arr_dwell.t_arr, arr.tz);
  const LocalSlot actual = local_slot(*seg.actual_arr + arr_dwell.t_arr, arr.tz);

  DelaySensitivity res;
  res.segment_id = seg.segment_id;
  res.scheduled_egress_period = sched.period;
  res.actual_egress_period = actual.period;
  res.scheduled_egress_date = sched.date;
  res.actual_egress_date = actual.date;
  if (sched.period == actual.period) return res;

  std::vector<const Zone*> used;
  for (const auto& z : zones) {
    const auto* before = rides.find(arr.zone_id, z.zone_id, sched.date, sched.period);
    const auto* after = rides.find(arr.zone_id, z.zone_id, actual.date, actual.period);
    if (!before || !after) {
      res.excluded_zones.push_back(z.zone_id);
      continue;
    }
    res.zones.push_back({z.zone_id, after->mean_s - before->mean_s, after->max_s - before->max_s,
                         0.0});
    used.push_back(&z);
  }
  if (res.zones.empty())
    throw SensitivityUndefined("segment " + seg.segment_id +
                               ": no zone has ride stats in both egress periods");

  double density_sum = 0.0;
  bool all_density = true;
  for (const Zone* z : used) {
    if (!z->population_density) {
      all_density = false;
      break;
    }
    density_sum += *z->population_density;
  }
  res.uniform_weights = !all_density || !(density_sum > 0.0);
  for (std::size_t i = 0; i < res.zones.size(); ++i)
    res.zones[i].weight = res.uniform_weights
                              ? 1.0 / static_cast<double>(res.zones.size())
                              : *used[i]->population_density / density_sum;

  double weighted = 0.0;
  std::int64_t worst = res.zones.front().delta_max_s;
  for (const auto& d : res.zones) {
    weighted += d.weight * static_cast<double>(d.delta_mean_s);
    worst = std::max(worst, d.delta_max_s);
  }
  res.weighted_mean_delta_s = weighted;
  res.max_of_max_delta_s = worst;
  return res;
}

} // namespace d2d
