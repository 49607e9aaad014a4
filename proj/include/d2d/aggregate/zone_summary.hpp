#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "d2d/aggregate/bins.hpp"
#include "d2d/aggregate/summary.hpp"

namespace d2d {

/// Everything known about one (zone, period) over the date range.
struct ZonePeriodSummary {
  std::string zone_id;
  DayPeriod period = DayPeriod::EarlyMorning;
  std::map<std::string, int> fastest_counts;
  std::map<std::string, int> reliable_counts;
  std::optional<std::string> fastest_mode;
  std::optional<std::string> most_reliable_mode;
  Rational e_bar;  // seconds
  int days_used = 0;
  std::int64_t days_in_range = 0;
  IntervalBin bin = IntervalBin::Under4h;

  double coverage() const {
    return days_in_range > 0 ? static_cast<double>(days_used) / static_cast<double>(days_in_range)
                             : 0.0;
  }
};

/// Combines fastest counts, reliability counts and the fastest average time.
/// `days_in_range` is |D|, used only for the coverage figure.
inline std::vector<ZonePeriodSummary> summarize(std::span<const ZonePeriodDayStat> stats,
                                                std::int64_t days_in_range) {
  const auto fast = fastest_mode_counts(stats);
  const auto rel = reliability_counts(stats);
  const auto times = fastest_time(stats);
  std::vector<ZonePeriodSummary> out;
  out.reserve(fast.size());
  // All three come from the same grouping, hence the same order.
  for (std::size_t i = 0; i < fast.size(); ++i) {
    ZonePeriodSummary s;
    s.zone_id = fast[i].zone_id;
    s.period = fast[i].period;
    s.fastest_counts = fast[i].counts;
    s.reliable_counts = rel[i].counts;
    s.fastest_mode = fast[i].winner;
    s.most_reliable_mode = rel[i].winner;
    s.e_bar = times[i].e_bar;
    s.days_used = times[i].days_used;
    s.days_in_range = days_in_range;
    s.bin = interval_bin(s.e_bar);
    out.push_back(std::move(s));
  }
  return out;
}

/// Counts zones per (fastest mode, period, interval).
inline BinTable bin_zone_counts(std::span<const ZonePeriodSummary> summaries) {
  BinTable table;
  for (const auto& s : summaries)
    if (s.fastest_mode) ++table[{*s.fastest_mode, s.period, interval_bin(s.e_bar)}];
  return table;
}

} // namespace d2d
