#pragma once

#include <memory>
#include <optional>
#include <string>

#include "d2d/core/period.hpp"
#include "d2d/core/time.hpp"

namespace d2d {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

inline bool valid_coordinates(const GeoPoint& p) {
  return p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

/// Smallest analysis unit: census tract, IRIS zone, wijk.
struct Zone {
  std::string zone_id;
  std::optional<GeoPoint> internal_point;
  std::optional<double> population_density;
};

enum class StationKind { Air, Rail };

inline std::string_view kind_name(StationKind k) { return k == StationKind::Air ? "air" : "rail"; }

/// Time spent in a station: planned processing before departure and the
/// exit time after arrival.
struct DwellProfile {
  Seconds t_sec_departure{0};
  Seconds t_arr{0};

  friend bool operator==(const DwellProfile&, const DwellProfile&) = default;
};

struct Station {
  std::string station_id;
  StationKind kind = StationKind::Air;
  GeoPoint location;
  std::string zone_id;
  std::string tz_name;
  TimeZone tz;
  DwellProfile dwell;
};

using StationRef = std::shared_ptr<const Station>;

/// One flight or train movement. Scheduled and actual instants are absolute;
/// the local interpretation comes from the stations' time zones.
struct ScheduledSegment {
  std::string segment_id;
  std::string mode_id;
  StationRef dep_station;
  StationRef arr_station;
  Instant sched_dep;
  Instant sched_arr;
  std::optional<Instant> actual_dep;
  std::optional<Instant> actual_arr;
  bool cancelled = false;
};

struct TripPhaseTimes {
  Seconds t_to{0};
  Seconds t_dep{0};
  Seconds t_in{0};
  Seconds t_arr{0};
  Seconds t_from{0};
  Seconds t_wait{0};

  Seconds total() const { return t_to + t_dep + t_in + t_arr + t_from; }
};

/// mean/min/max of one ride leg, in seconds.
struct RideVariants {
  Seconds mean{0};
  Seconds min{0};
  Seconds max{0};
};

/// One evaluated door-to-door trip.
struct TripRecord {
  std::string segment_id;
  std::string mode_id;
  std::string dep_station_id;
  std::string arr_station_id;
  std::string origin_zone;
  std::string dest_zone;
  TripPhaseTimes phases;
  RideVariants ride_to;
  RideVariants ride_from;
  DayPeriod arrival_period = DayPeriod::EarlyMorning;
  Date arrival_date;
  bool used_daily_fallback_to = false;
  bool used_daily_fallback_from = false;

  Seconds total() const { return phases.total(); }

  Seconds total_min_variant() const {
    return total() - ride_to.mean + ride_to.min - ride_from.mean + ride_from.min;
  }
  Seconds total_max_variant() const {
    return total() - ride_to.mean + ride_to.max - ride_from.mean + ride_from.max;
  }
};

} // namespace d2d
