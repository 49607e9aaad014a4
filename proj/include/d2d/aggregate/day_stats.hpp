#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "d2d/core/rational.hpp"
#include "d2d/core/types.hpp"

namespace d2d {

/// Mean door-to-door time of one mode into one zone for a (date, period).
struct ZonePeriodDayStat {
  std::string zone_id;
  DayPeriod period = DayPeriod::EarlyMorning;
  Date date;
  std::string mode_id;
  Rational mean_total;   // seconds
  std::int64_t n_trips = 0;
  Rational variability;  // seconds, mean of (max-variant total - min-variant total)
};

enum class PeriodGrouping {
  ByPeriod,
  /// Pool every period of a day; records carry DayPeriod::DailyOnly.
  WholeDay,
};

/// Groups trips by (arrival zone, period, arrival date, mode) and averages
/// their totals. Output is sorted by that key.
inline std::vector<ZonePeriodDayStat> daily_zone_means(
    std::span<const TripRecord> trips, PeriodGrouping grouping = PeriodGrouping::ByPeriod) {
  struct Acc {
    std::int64_t total = 0;
    std::int64_t spread = 0;
    std::int64_t n = 0;
  };
  using Key = std::tuple<std::string, DayPeriod, Date, std::string>;
  std::map<Key, Acc> groups;
  for (const auto& t : trips) {
    const DayPeriod p =
        grouping == PeriodGrouping::WholeDay ? DayPeriod::DailyOnly : t.arrival_period;
    Acc& a = groups[Key{t.dest_zone, p, t.arrival_date, t.mode_id}];
    a.total += t.total().count();
    a.spread += (t.total_max_variant() - t.total_min_variant()).count();
    ++a.n;
  }
  std::vector<ZonePeriodDayStat> out;
  out.reserve(groups.size());
  for (const auto& [k, a] : groups) {
    const auto& [zone, period, date, mode] = k;
    out.push_back({zone, period, date, mode, Rational(a.total, a.n), a.n,
                   Rational(a.spread, a.n)});
  }
  return out;
}

inline std::vector<ZonePeriodDayStat> filter_date(std::span<const ZonePeriodDayStat> stats,
                                                  Date date) {
  std::vector<ZonePeriodDayStat> out;
  for (const auto& s : stats)
    if (s.date == date) out.push_back(s);
  return out;
}

} // namespace d2d
