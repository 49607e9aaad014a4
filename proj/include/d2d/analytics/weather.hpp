#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "d2d/aggregate/zone_summary.hpp"

namespace d2d {

enum class Presence { Both, Disappeared, Appeared };

inline std::string_view presence_name(Presence p) {
  switch (p) {
  case Presence::Both: return "both";
  case Presence::Disappeared: return "disappeared";
  case Presence::Appeared: return "appeared";
  }
  return "?";
}

struct ZoneDelta {
  std::string zone_id;
  DayPeriod period = DayPeriod::EarlyMorning;
  std::optional<Rational> e_bar_a;
  std::optional<Rational> e_bar_b;
  std::optional<Rational> delta;  // e_bar_b - e_bar_a, seconds
  Presence presence = Presence::Both;
};

/// Compares fastest average times of two evaluations (typically two single
/// days). Zones reached in A but not in B are flagged as disappeared.
inline std::vector<ZoneDelta> weather_diff(std::span<const ZonePeriodSummary> a,
                                           std::span<const ZonePeriodSummary> b) {
  std::map<std::pair<std::string, DayPeriod>, ZoneDelta> out;
  for (const auto& s : a) {
    auto& d = out[{s.zone_id, s.period}];
    d.zone_id = s.zone_id;
    d.period = s.period;
    d.e_bar_a = s.e_bar;
  }
  for (const auto& s : b) {
    auto& d = out[{s.zone_id, s.period}];
    d.zone_id = s.zone_id;
    d.period = s.period;
    d.e_bar_b = s.e_bar;
  }
  std::vector<ZoneDelta> res;
  for (auto& [k, d] : out) {
    if (d.e_bar_a && d.e_bar_b) {
      d.presence = Presence::Both;
      d.delta = *d.e_bar_b - *d.e_bar_a;
    } else {
      d.presence = d.e_bar_a ? Presence::Disappeared : Presence::Appeared;
    }
    res.push_back(std::move(d));
  }
  return res;
}

} // namespace d2d
