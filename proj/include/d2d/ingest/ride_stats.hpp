#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "d2d/core/period.hpp"
#include "d2d/core/time.hpp"
#include "d2d/core/trip.hpp"
#include "d2d/ingest/csv.hpp"

namespace d2d {

inline constexpr std::string_view kRideStatsHeader =
    "origin_zone,dest_zone,date,period,mean_s,min_s,max_s";

/// Zone-pair ride time aggregate for one date and period.
struct ZoneRideStat {
  std::string origin_zone;
  std::string dest_zone;
  Date date;
  DayPeriod period = DayPeriod::DailyOnly;
  std::int64_t mean_s = 0;
  std::int64_t min_s = 0;
  std::int64_t max_s = 0;

  RideVariants variants() const { return {Seconds(mean_s), Seconds(min_s), Seconds(max_s)}; }

  auto key() const { return std::tie(origin_zone, dest_zone, date, period); }
};

struct LoadReport {
  std::size_t loaded = 0;
  std::size_t skipped = 0;
};

/// Immutable lookup (origin, dest, date, period) with daily fallback.
class RideStatIndex {
public:
  RideStatIndex() = default;

  /// Throws InputError on duplicate keys or invalid values.
  explicit RideStatIndex(std::vector<ZoneRideStat> records) : records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(),
              [](const auto& a, const auto& b) { return a.key() < b.key(); });
    index_.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto& r = records_[i];
      validate(r);
      if (!index_.emplace(Key{r.origin_zone, r.dest_zone, r.date, r.period}, i).second)
        throw InputError("duplicate ride stat " + r.origin_zone + "," + r.dest_zone + "," +
                         format_date(r.date) + "," + std::to_string(period_code(r.period)));
    }
  }

  static void validate(const ZoneRideStat& r) {
    if (r.min_s <= 0 || r.mean_s <= 0 || r.max_s <= 0)
      throw InputError("ride times must be positive");
    if (r.min_s > r.max_s) throw InputError("min_s > max_s");
    if (r.mean_s < r.min_s || r.mean_s > r.max_s)
      throw InputError("mean_s outside [min_s, max_s]");
  }

  /// Exact record for the key, no fallback.
  const ZoneRideStat* find(std::string_view origin, std::string_view dest, Date date,
                           DayPeriod period) const {
    auto it = index_.find(KeyView{origin, dest, date, period});
    return it == index_.end() ? nullptr : &records_[it->second];
  }

  /// Period-level record if present, else the day's DailyOnly record.
  std::optional<RideHit> lookup(std::string_view origin, std::string_view dest, Date date,
                                DayPeriod period) const {
    if (period != DayPeriod::DailyOnly)
      if (const auto* r = find(origin, dest, date, period)) return RideHit{r->variants(), false};
    if (const auto* r = find(origin, dest, date, DayPeriod::DailyOnly))
      return RideHit{r->variants(), period != DayPeriod::DailyOnly};
    return std::nullopt;
  }

  /// Records sorted by (origin, dest, date, period).
  const std::vector<ZoneRideStat>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

private:
  struct Key {
    std::string origin, dest;
    Date date;
    DayPeriod period;
  };
  struct KeyView {
    std::string_view origin, dest;
    Date date;
    DayPeriod period;
  };
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(const KeyView& k) const noexcept {
      std::size_t h = std::hash<std::string_view>{}(k.origin);
      h = h * 1000003u ^ std::hash<std::string_view>{}(k.dest);
      h = h * 1000003u ^ std::hash<std::int64_t>{}(k.date - Date(1970, 1, 1));
      return h * 31u + static_cast<std::size_t>(k.period);
    }
    std::size_t operator()(const Key& k) const noexcept {
      return (*this)(KeyView{k.origin, k.dest, k.date, k.period});
    }
  };
  struct Eq {
    using is_transparent = void;
    static KeyView view(const Key& k) { return {k.origin, k.dest, k.date, k.period}; }
    static const KeyView& view(const KeyView& k) { return k; }
    template <class A, class B>
    bool operator()(const A& a, const B& b) const noexcept {
      const KeyView& x = view(a);
      const KeyView& y = view(b);
      return x.origin == y.origin && x.dest == y.dest && x.date == y.date && x.period == y.period;
    }
  };

  std::vector<ZoneRideStat> records_;
  std::unordered_map<Key, std::size_t, Hash, Eq> index_;
};

static_assert(RideLookup<RideStatIndex>);

inline RideStatIndex read_ride_stats(std::istream& in, const std::string& source,
                                     LoadReport* report = nullptr) {
  csv::Reader rd(in, source);
  rd.expect_header(kRideStatsHeader);
  std::vector<ZoneRideStat> rows;
  std::vector<std::string> f;
  std::vector<std::size_t> lines;
  while (rd.next(f, 7)) {
    ZoneRideStat r;
    r.origin_zone = f[0];
    r.dest_zone = f[1];
    if (r.origin_zone.empty() || r.dest_zone.empty()) rd.fail("empty zone id");
    auto date = csv::parse_date(f[2]);
    if (!date) rd.fail("bad date '" + f[2] + "'");
    r.date = *date;
    auto code = csv::parse_int(f[3]);
    auto period = code ? period_from_code(static_cast<int>(*code)) : std::nullopt;
    if (!period) rd.fail("bad period '" + f[3] + "'");
    r.period = *period;
    auto mean = csv::parse_int(f[4]), mn = csv::parse_int(f[5]), mx = csv::parse_int(f[6]);
    if (!mean || !mn || !mx) rd.fail("ride times must be integer seconds");
    r.mean_s = *mean;
    r.min_s = *mn;
    r.max_s = *mx;
    try {
      RideStatIndex::validate(r);
    } catch (const InputError& e) {
      rd.fail(e.what());
    }
    rows.push_back(std::move(r));
    lines.push_back(rd.line());
  }
  // Duplicate detection with line numbers before building the index.
  {
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return rows[a].key() < rows[b].key(); });
    for (std::size_t i = 1; i < order.size(); ++i)
      if (rows[order[i]].key() == rows[order[i - 1]].key())
        throw InputError(source, lines[order[i]],
                         "duplicate key (first seen on line " +
                             std::to_string(lines[order[i - 1]]) + ")");
  }
  if (report) *report = {rows.size(), rd.skipped()};
  return RideStatIndex(std::move(rows));
}

inline RideStatIndex load_ride_stats(const std::string& path, LoadReport* report = nullptr) {
  auto in = csv::open(path);
  return read_ride_stats(in, path, report);
}

/// Canonical serialization: header plus records in index order.
inline void write_ride_stats(std::ostream& out, const RideStatIndex& index) {
  out << kRideStatsHeader << '\n';
  for (const auto& r : index.records())
    out << r.origin_zone << ',' << r.dest_zone << ',' << format_date(r.date) << ','
        << period_code(r.period) << ',' << r.mean_s << ',' << r.min_s << ',' << r.max_s << '\n';
}

} // namespace d2d
