#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "d2d/aggregate/day_stats.hpp"
#include "d2d/core/rational.hpp"

namespace d2d {

/// Per (zone, period): on how many days each mode attained the daily minimum.
struct ModeCounts {
  std::string zone_id;
  DayPeriod period = DayPeriod::EarlyMorning;
  std::map<std::string, int> counts;  // every mode of the input, zero included
  std::optional<std::string> winner;  // argmax, ties to the smallest mode_id
  int days_with_records = 0;
};

struct FastestTime {
  std::string zone_id;
  DayPeriod period = DayPeriod::EarlyMorning;
  Rational e_bar;  // seconds
  int days_used = 0;
};

namespace detail {

using ZonePeriodKey = std::pair<std::string, DayPeriod>;

/// (zone, period) -> date -> records of that day.
template <class Fn>
void for_each_zone_day(std::span<const ZonePeriodDayStat> stats, Fn&& fn) {
  std::map<ZonePeriodKey, std::map<Date, std::vector<const ZonePeriodDayStat*>>> groups;
  for (const auto& s : stats) groups[{s.zone_id, s.period}][s.date].push_back(&s);
  for (const auto& [key, days] : groups) fn(key, days);
}

inline std::set<std::string> mode_universe(std::span<const ZonePeriodDayStat> stats) {
  std::set<std::string> modes;
  for (const auto& s : stats) modes.insert(s.mode_id);
  return modes;
}

/// Set-argmin counting over days; every tied mode scores.
template <class Value>
std::vector<ModeCounts> count_daily_minima(std::span<const ZonePeriodDayStat> stats,
                                           Value&& value) {
  const auto modes = mode_universe(stats);
  std::vector<ModeCounts> out;
  for_each_zone_day(stats, [&](const ZonePeriodKey& key, const auto& days) {
    ModeCounts mc;
    mc.zone_id = key.first;
    mc.period = key.second;
    for (const auto& m : modes) mc.counts[m] = 0;
    for (const auto& [date, recs] : days) {
      Rational best = value(*recs.front());
      for (const auto* r : recs) best = std::min(best, value(*r));
      for (const auto* r : recs)
        if (value(*r) == best) ++mc.counts[r->mode_id];
      ++mc.days_with_records;
    }
    int top = 0;
    for (const auto& [m, n] : mc.counts)
      if (n > top) {
        top = n;
        mc.winner = m;
      }
    out.push_back(std::move(mc));
  });
  return out;
}

} // namespace detail

/// Number of days each mode had the shortest mean door-to-door time.
inline std::vector<ModeCounts> fastest_mode_counts(std::span<const ZonePeriodDayStat> stats) {
  return detail::count_daily_minima(stats, [](const auto& s) { return s.mean_total; });
}

/// Number of days each mode had the lowest variability.
inline std::vector<ModeCounts> reliability_counts(std::span<const ZonePeriodDayStat> stats) {
  return detail::count_daily_minima(stats, [](const auto& s) { return s.variability; });
}

/// Mean over served days of the daily minimum across modes. Days without any
/// record for the zone and period are left out of the average.
inline std::vector<FastestTime> fastest_time(std::span<const ZonePeriodDayStat> stats) {
  std::vector<FastestTime> out;
  detail::for_each_zone_day(stats, [&](const detail::ZonePeriodKey& key, const auto& days) {
    Rational sum;
    for (const auto& [date, recs] : days) {
      Rational best = recs.front()->mean_total;
      for (const auto* r : recs) best = std::min(best, r->mean_total);
      sum += best;
    }
    const int n = static_cast<int>(days.size());
    out.push_back({key.first, key.second, sum / n, n});
  });
  return out;
}

} // namespace d2d
