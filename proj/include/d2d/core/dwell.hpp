#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "d2d/core/types.hpp"

namespace d2d {

struct DwellDefault {
  std::string_view station_id;
  int departure_min;
  int arrival_min;
};

/// Average dwell times at the airports of the reference study, in minutes.
inline constexpr std::array<DwellDefault, 9> kAirportDwellDefaults = {{
    {"ATL", 110, 60},
    {"BOS", 105, 40},
    {"DCA", 100, 35},
    {"LAX", 125, 65},
    {"SEA", 105, 50},
    {"SFO", 105, 45},
    {"AMS", 90, 45},
    {"CDG", 90, 45},
    {"ORY", 90, 45},
}};

/// Every train station: 15 min before departure, 10 min to leave.
inline constexpr DwellDefault kRailDwellDefault = {"*", 15, 10};

inline DwellProfile to_profile(const DwellDefault& d) {
  return {minutes(d.departure_min), minutes(d.arrival_min)};
}

/// Built-in profile for a station, or nullopt for an airport outside the table.
inline std::optional<DwellProfile> default_dwell(std::string_view station_id, StationKind kind) {
  if (kind == StationKind::Rail) return to_profile(kRailDwellDefault);
  for (const auto& d : kAirportDwellDefaults)
    if (d.station_id == station_id) return to_profile(d);
  return std::nullopt;
}

/// Replacement processing times for one station kind; unset fields keep the
/// station's own value.
struct DwellOverride {
  std::optional<Seconds> t_sec_departure;
  std::optional<Seconds> t_arr;

  bool empty() const { return !t_sec_departure && !t_arr; }
};

/// Per-kind replacements used by processing-time scenarios.
struct DwellOverrides {
  DwellOverride air;
  DwellOverride rail;

  DwellProfile resolve(const Station& s) const {
    const DwellOverride& o = s.kind == StationKind::Air ? air : rail;
    return {o.t_sec_departure.value_or(s.dwell.t_sec_departure), o.t_arr.value_or(s.dwell.t_arr)};
  }
};

} // namespace d2d
