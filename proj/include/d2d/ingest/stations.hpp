#pragma once

#include <cmath>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/core/dwell.hpp"
#include "d2d/core/types.hpp"
#include "d2d/ingest/csv.hpp"
#include "d2d/ingest/ride_stats.hpp"

namespace d2d {

inline constexpr std::string_view kStationsHeader =
    "station_id,kind,zone_id,lat,lon,tz,t_sec_dep_min,t_arr_min";

/// Stations by id. Dwell columns may be left empty to use the built-in table.
class StationTable {
public:
  StationTable() = default;

  explicit StationTable(std::vector<Station> stations) {
    for (auto& s : stations) {
      auto id = s.station_id;
      if (!by_id_.emplace(id, std::make_shared<const Station>(std::move(s))).second)
        throw InputError("duplicate station '" + id + "'");
    }
  }

  StationRef get(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : it->second;
  }

  StationRef require(std::string_view id) const {
    if (auto s = get(id)) return s;
    throw InputError("unknown station '" + std::string(id) + "'");
  }

  /// Stations in id order.
  std::vector<StationRef> all() const {
    std::vector<StationRef> out;
    for (const auto& [id, s] : by_id_) out.push_back(s);
    return out;
  }

  std::size_t size() const noexcept { return by_id_.size(); }

private:
  std::map<std::string, StationRef, std::less<>> by_id_;
};

namespace detail {
inline std::optional<Seconds> parse_minutes(std::string_view s) {
  auto v = csv::parse_double(s);
  if (!v || !std::isfinite(*v) || *v < 0) return std::nullopt;
  return Seconds(std::llround(*v * 60.0));
}

inline std::string format_minutes(Seconds s) {
  if (s.count() % 60 == 0) return std::to_string(s.count() / 60);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", static_cast<double>(s.count()) / 60.0);
  return buf;
}
} // namespace detail

inline StationTable read_stations(std::istream& in, const std::string& source,
                                  LoadReport* report = nullptr) {
  csv::Reader rd(in, source);
  rd.expect_header(kStationsHeader);
  std::vector<Station> out;
  std::vector<std::string> f;
  while (rd.next(f, 8)) {
    Station s;
    s.station_id = f[0];
    if (s.station_id.empty()) rd.fail("empty station_id");
    if (f[1] == "air")
      s.kind = StationKind::Air;
    else if (f[1] == "rail")
      s.kind = StationKind::Rail;
    else
      rd.fail("kind must be air or rail");
    s.zone_id = f[2];
    if (s.zone_id.empty()) rd.fail("empty zone_id");
    auto lat = csv::parse_double(f[3]), lon = csv::parse_double(f[4]);
    if (!lat || !lon || !valid_coordinates({*lat, *lon})) rd.fail("invalid coordinates");
    s.location = {*lat, *lon};
    s.tz_name = f[5];
    try {
      s.tz = load_time_zone(s.tz_name);
    } catch (const InputError& e) {
      rd.fail(e.what());
    }
    auto builtin = default_dwell(s.station_id, s.kind);
    if (f[6].empty() || f[7].empty()) {
      if (!builtin) rd.fail("no dwell times given and no built-in default for " + s.station_id);
    }
    s.dwell = builtin.value_or(DwellProfile{});
    if (!f[6].empty()) {
      auto v = detail::parse_minutes(f[6]);
      if (!v) rd.fail("t_sec_dep_min must be a non-negative number");
      s.dwell.t_sec_departure = *v;
    }
    if (!f[7].empty()) {
      auto v = detail::parse_minutes(f[7]);
      if (!v) rd.fail("t_arr_min must be a non-negative number");
      s.dwell.t_arr = *v;
    }
    out.push_back(std::move(s));
  }
  if (report) *report = {out.size(), rd.skipped()};
  try {
    return StationTable(std::move(out));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline StationTable load_stations(const std::string& path, LoadReport* report = nullptr) {
  auto in = csv::open(path);
  return read_stations(in, path, report);
}

/// Writes resolved dwell values, so the output never depends on defaults.
inline void write_stations(std::ostream& out, const StationTable& table) {
  out << kStationsHeader << '\n';
  char buf[64];
  for (const auto& s : table.all()) {
    out << s->station_id << ',' << kind_name(s->kind) << ',' << s->zone_id << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", s->location.lat, s->location.lon);
    out << buf << ',' << s->tz_name << ',' << detail::format_minutes(s->dwell.t_sec_departure)
        << ',' << detail::format_minutes(s->dwell.t_arr) << '\n';
  }
}

} // namespace d2d
