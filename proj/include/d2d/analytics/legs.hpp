#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "d2d/core/types.hpp"

namespace d2d {

enum Phase { kTo = 0, kDep, kIn, kArr, kFrom };

/// Mean share of each phase in the door-to-door time for one city pair.
struct LegShare {
  std::string city_pair;
  std::size_t n_trips = 0;
  std::array<double, 5> mean_pct{};  // indexed by Phase
};

struct LegShareResult {
  std::vector<LegShare> shares;  // ascending in-vehicle share
  std::size_t zero_total_excluded = 0;
};

inline std::array<double, 5> phase_percentages(const TripPhaseTimes& p) {
  const double total = static_cast<double>(p.total().count());
  return {100.0 * static_cast<double>(p.t_to.count()) / total,
          100.0 * static_cast<double>(p.t_dep.count()) / total,
          100.0 * static_cast<double>(p.t_in.count()) / total,
          100.0 * static_cast<double>(p.t_arr.count()) / total,
          100.0 * static_cast<double>(p.t_from.count()) / total};
}

inline std::string station_pair(const TripRecord& t) {
  return t.dep_station_id + "-" + t.arr_station_id;
}

/// Per-trip percentages averaged per city pair (default key: station pair).
inline LegShareResult leg_shares(
    std::span<const TripRecord> trips,
    const std::function<std::string(const TripRecord&)>& city_pair = station_pair) {
  struct Acc {
    std::array<double, 5> sum{};
    std::size_t n = 0;
  };
  std::map<std::string, Acc> groups;
  LegShareResult res;
  for (const auto& t : trips) {
    if (t.total().count() <= 0) {
      ++res.zero_total_excluded;
      continue;
    }
    const auto pct = phase_percentages(t.phases);
    Acc& a = groups[city_pair(t)];
    for (int i = 0; i < 5; ++i) a.sum[i] += pct[i];
    ++a.n;
  }
  for (const auto& [pair, a] : groups) {
    LegShare s{pair, a.n, {}};
    for (int i = 0; i < 5; ++i) s.mean_pct[i] = a.sum[i] / static_cast<double>(a.n);
    res.shares.push_back(std::move(s));
  }
  // Map order makes ties fall back to city pair id.
  std::stable_sort(res.shares.begin(), res.shares.end(), [](const auto& a, const auto& b) {
    return a.mean_pct[kIn] < b.mean_pct[kIn];
  });
  return res;
}

} // namespace d2d
