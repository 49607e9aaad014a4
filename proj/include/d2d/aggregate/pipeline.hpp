#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "d2d/aggregate/day_stats.hpp"
#include "d2d/aggregate/zone_summary.hpp"
#include "d2d/core/dwell.hpp"
#include "d2d/core/trip.hpp"
#include "d2d/ingest/ride_stats.hpp"
#include "d2d/ingest/schedule.hpp"
#include "d2d/ingest/zones.hpp"

namespace d2d {

/// Read-only inputs of a door-to-door evaluation: every segment is tried
/// from `origin_zone` to every zone of `zones`.
struct TripInputs {
  std::span<const ScheduledSegment> segments;
  const ZoneSet* zones = nullptr;
  const RideStatIndex* rides = nullptr;
  std::string origin_zone;
  /// Analysis days D. Trips grouped on other dates are dropped; segments may
  /// start the day before so that overnight arrivals on the first day count.
  std::optional<DateRange> days;
};

struct EvalOptions {
  TripOptions trip;
  unsigned threads = 1;
};

struct TripSet {
  std::vector<TripRecord> trips;
  std::size_t cancelled_segments = 0;
  std::size_t not_computable = 0;
  /// Trips whose grouping date fell outside TripInputs::days.
  std::size_t outside_days = 0;
  /// Zones no segment could reach for lack of ride data.
  std::vector<std::string> unreached_zones;
};

namespace detail {

inline std::vector<TripRecord> evaluate_chunk(std::span<const ScheduledSegment> segs,
                                              const TripInputs& in, const Zone& origin,
                                              const DwellOverrides& overrides,
                                              const TripOptions& opts, std::size_t& skipped) {
  std::vector<TripRecord> out;
  for (const auto& seg : segs) {
    if (seg.cancelled) continue;
    const DwellProfile dep = overrides.resolve(*seg.dep_station);
    const DwellProfile arr = overrides.resolve(*seg.arr_station);
    for (const auto& dest : in.zones->zones()) {
      try {
        out.push_back(compute_trip(seg, origin, dest, dep, arr, *in.rides, opts));
      } catch (const TripNotComputable&) {
        ++skipped;
      }
    }
  }
  return out;
}

} // namespace detail

/// Evaluates all (segment, destination zone) trips. The result order is
/// segment order then zone order, whatever the thread count.
inline TripSet evaluate_trips(const TripInputs& in, const DwellOverrides& overrides = {},
                              const EvalOptions& opts = {}) {
  if (!in.zones || !in.rides) throw std::invalid_argument("evaluate_trips: missing inputs");
  Zone origin{in.origin_zone, std::nullopt, std::nullopt};
  if (const Zone* z = in.zones->find(in.origin_zone)) origin = *z;

  const std::size_t n = in.segments.size();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(opts.threads, n));
  std::vector<std::vector<TripRecord>> parts(workers);
  std::vector<std::size_t> skipped(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
      auto job = [&, w, lo, hi] {
        try {
          parts[w] = detail::evaluate_chunk(in.segments.subspan(lo, hi - lo), in, origin,
                                            overrides, opts.trip, skipped[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      };
      if (workers == 1)
        job();
      else
        pool.emplace_back(job);
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  TripSet set;
  for (std::size_t w = 0; w < workers; ++w) {
    set.not_computable += skipped[w];
    for (auto& t : parts[w]) {
      if (in.days && !in.days->contains(t.arrival_date)) {
        ++set.outside_days;
        continue;
      }
      set.trips.push_back(std::move(t));
    }
  }
  for (const auto& s : in.segments) set.cancelled_segments += s.cancelled ? 1 : 0;
  std::set<std::string, std::less<>> reached;
  for (const auto& t : set.trips) reached.insert(t.dest_zone);
  for (const auto& z : in.zones->zones())
    if (!reached.count(z.zone_id)) set.unreached_zones.push_back(z.zone_id);
  return set;
}

struct AnalysisResult {
  TripSet trips;
  std::vector<ZonePeriodDayStat> day_stats;
  std::vector<ZonePeriodSummary> summaries;
};

inline AnalysisResult analyze(const TripInputs& in, std::int64_t days_in_range,
                              const DwellOverrides& overrides = {},
                              const EvalOptions& opts = {}) {
  AnalysisResult r;
  r.trips = evaluate_trips(in, overrides, opts);
  r.day_stats = daily_zone_means(r.trips.trips);
  r.summaries = summarize(r.day_stats, days_in_range);
  return r;
}

struct WhatIfResult {
  AnalysisResult baseline;
  AnalysisResult scenario;
};

/// Recomputes every trip under replaced processing times. Trips may change
/// period or day as a consequence; nothing is patched after the fact.
inline WhatIfResult what_if_processing(const TripInputs& in, std::int64_t days_in_range,
                                       const DwellOverrides& overrides,
                                       const EvalOptions& opts = {}) {
  for (const auto* o : {&overrides.air, &overrides.rail})
    for (const auto& v : {o->t_sec_departure, o->t_arr})
      if (v && v->count() < 0)
        throw std::invalid_argument("what_if_processing: negative processing time");
  return {analyze(in, days_in_range, {}, opts), analyze(in, days_in_range, overrides, opts)};
}

} // namespace d2d
