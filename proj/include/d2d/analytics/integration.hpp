#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "d2d/analytics/ols.hpp"
#include "d2d/core/geodesic.hpp"
#include "d2d/ingest/ride_stats.hpp"
#include "d2d/ingest/schedule.hpp"
#include "d2d/ingest/zones.hpp"

namespace d2d {

struct IntegrationSample {
  std::string zone_id;
  double distance_km = 0.0;
  double mean_ride_min = 0.0;
  int days = 0;
};

/// Access-ride time versus distance for one station.
struct IntegrationFit {
  std::string station_id;
  std::vector<IntegrationSample> samples;
  double slope = 0.0;      // min per km
  double intercept = 0.0;  // min
  double max_range_km = 0.0;
  std::vector<std::string> zones_without_point;
};

/// Samples are the whole-day ride aggregates from each zone to the station's
/// zone, averaged over the dates in `range` (all dates when absent).
inline IntegrationFit airport_integration(const Station& station, const RideStatIndex& rides,
                                          const ZoneSet& zones,
                                          const std::optional<DateRange>& range = std::nullopt) {
  IntegrationFit fit;
  fit.station_id = station.station_id;
  for (const auto& z : zones.zones()) {
    std::int64_t sum = 0;
    int days = 0;
    // Records are sorted by (origin, dest, ...): scan the relevant run.
    const auto& recs = rides.records();
    auto it = std::lower_bound(recs.begin(), recs.end(), z.zone_id,
                               [](const ZoneRideStat& r, const std::string& id) {
                                 return r.origin_zone < id;
                               });
    for (; it != recs.end() && it->origin_zone == z.zone_id; ++it) {
      if (it->dest_zone != station.zone_id || it->period != DayPeriod::DailyOnly) continue;
      if (range && !range->contains(it->date)) continue;
      sum += it->mean_s;
      ++days;
    }
    if (days == 0) continue;
    if (!z.internal_point) {
      fit.zones_without_point.push_back(z.zone_id);
      continue;
    }
    IntegrationSample s;
    s.zone_id = z.zone_id;
    s.distance_km = geodesic_distance(*z.internal_point, station.location);
    s.mean_ride_min = static_cast<double>(sum) / days / 60.0;
    s.days = days;
    fit.samples.push_back(std::move(s));
  }
  std::set<double> distinct;
  std::vector<double> x, y;
  for (const auto& s : fit.samples) {
    distinct.insert(s.distance_km);
    x.push_back(s.distance_km);
    y.push_back(s.mean_ride_min);
    fit.max_range_km = std::max(fit.max_range_km, s.distance_km);
  }
  if (distinct.size() < 2)
    throw FitUndefined("station " + station.station_id +
                       ": fewer than two distinct zone distances with daily ride data");
  const LinearFit lf = ols_fit(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  return fit;
}

/// Station ids from best (smallest slope) to worst integrated.
inline std::vector<std::string> rank_by_slope(std::vector<IntegrationFit> fits) {
  std::stable_sort(fits.begin(), fits.end(), [](const auto& a, const auto& b) {
    return a.slope < b.slope || (a.slope == b.slope && a.station_id < b.station_id);
  });
  std::vector<std::string> ids;
  for (const auto& f : fits) ids.push_back(f.station_id);
  return ids;
}

} // namespace d2d
