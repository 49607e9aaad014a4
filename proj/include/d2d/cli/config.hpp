#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "d2d/core/trip.hpp"
#include "d2d/error.hpp"
#include "d2d/ingest/schedule.hpp"

namespace d2d::cli {

enum class ExportFormat { GeoJson, Csv, Both };

struct RunConfig {
  std::string ride_stats;
  std::string segments;
  std::string weekly_schedule;
  std::string stations;
  std::string zones;
  std::string from_date;
  std::string to_date;
  std::string origin_zone;
  std::string dataset_id = "dataset";
  bool on_time_mode = false;
  std::optional<double> dep_proc_min;
  std::optional<double> arr_proc_min;
  std::string override_kind = "air";
  std::string out_dir = ".";
  std::string format = "both";
  std::string group_by = "arrival";
  unsigned threads = 1;
  // subcommand specific
  std::string segment_id;
  std::string date_a;
  std::string date_b;

  bool wants_geojson() const { return format == "geojson" || format == "both"; }
  bool wants_csv() const { return format == "csv" || format == "both"; }

  GroupingInstant grouping() const {
    return group_by == "departure" ? GroupingInstant::DoorDeparture : GroupingInstant::DoorArrival;
  }

  std::optional<DateRange> date_range() const;
};

/// Flat `key = value` text. Blank lines and lines starting with '#' are
/// ignored. Keys use the long flag names without leading dashes.
inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t n = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(path, n, "expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline std::optional<DateRange> RunConfig::date_range() const {
  if (from_date.empty() && to_date.empty()) return std::nullopt;
  if (from_date.empty() || to_date.empty())
    throw InputError("--from-date and --to-date must be given together");
  auto a = csv::parse_date(from_date), b = csv::parse_date(to_date);
  if (!a || !b) throw InputError("dates must be YYYY-MM-DD");
  DateRange r{*a, *b};
  if (r.empty()) throw InputError("date range is empty");
  return r;
}

} // namespace d2d::cli
