#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "d2d/aggregate/pipeline.hpp"
#include "d2d/analytics/delay.hpp"
#include "d2d/analytics/integration.hpp"
#include "d2d/analytics/legs.hpp"
#include "d2d/analytics/weather.hpp"
#include "d2d/cli/config.hpp"
#include "d2d/cli/export.hpp"
#include "d2d/ingest/schedule.hpp"
#include "d2d/ingest/segments.hpp"
#include "d2d/ingest/stations.hpp"
#include "d2d/ingest/zones.hpp"

namespace d2d::cli {

enum ExitCode { kOk = 0, kInputError = 2, kComputationError = 3 };

/// Everything loaded for one run.
struct Dataset {
  StationTable stations;
  RideStatIndex rides;
  ZoneSet zones;
  std::vector<ScheduledSegment> segments;
  std::optional<DateRange> range;
  std::optional<DateRange> segment_range;
  LoadReport ride_report, station_report, segment_report, schedule_report, zone_report;
  std::size_t schedule_rows = 0;
  std::size_t expanded_segments = 0;
  std::size_t segments_outside_range = 0;
};

inline void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string("missing required input ") + flag);
  if (!std::filesystem::exists(path))
    throw InputError(std::string(flag) + ": file '" + path + "' does not exist");
}

inline Dataset load_dataset(const RunConfig& cfg) {
  Dataset ds;
  require_file(cfg.stations, "--stations");
  require_file(cfg.zones, "--zones");
  require_file(cfg.ride_stats, "--ride-stats");
  if (cfg.segments.empty() && cfg.weekly_schedule.empty())
    throw InputError("one of --segments or --weekly-schedule is required");
  if (!cfg.segments.empty()) require_file(cfg.segments, "--segments");
  if (!cfg.weekly_schedule.empty()) require_file(cfg.weekly_schedule, "--weekly-schedule");

  ds.range = cfg.date_range();
  // Late departures on the eve of the first day arrive within the range.
  if (ds.range) ds.segment_range = DateRange{ds.range->first - 1, ds.range->last};
  ds.stations = load_stations(cfg.stations, &ds.station_report);
  ds.zones = load_zones(cfg.zones, &ds.zone_report);
  ds.rides = load_ride_stats(cfg.ride_stats, &ds.ride_report);

  if (!cfg.segments.empty()) {
    auto segs =
        load_segments_actuals(cfg.segments, ds.stations, cfg.on_time_mode, &ds.segment_report);
    for (auto& s : segs) {
      const Date d(absl::ToCivilDay(s.sched_dep, s.dep_station->tz));
      if (ds.range && !ds.segment_range->contains(d)) {
        ++ds.segments_outside_range;
        continue;
      }
      ds.segments.push_back(std::move(s));
    }
  }
  if (!cfg.weekly_schedule.empty()) {
    if (!ds.range) throw InputError("--weekly-schedule needs --from-date and --to-date");
    const auto rows = load_weekly_schedule(cfg.weekly_schedule, &ds.schedule_report);
    ds.schedule_rows = rows.size();
    auto segs = expand_weekly_schedule(rows, *ds.segment_range, ds.stations);
    ds.expanded_segments = segs.size();
    std::move(segs.begin(), segs.end(), std::back_inserter(ds.segments));
  }
  return ds;
}

inline DwellOverrides overrides_from(const RunConfig& cfg) {
  DwellOverrides o;
  if (cfg.override_kind != "air" && cfg.override_kind != "rail")
    throw InputError("--override-kind must be air or rail");
  DwellOverride& target = cfg.override_kind == "air" ? o.air : o.rail;
  auto to_seconds = [](double m, const char* flag) {
    if (!std::isfinite(m) || m < 0) throw InputError(std::string(flag) + " must be >= 0");
    return Seconds(std::llround(m * 60.0));
  };
  if (cfg.dep_proc_min) target.t_sec_departure = to_seconds(*cfg.dep_proc_min, "--dep-proc-min");
  if (cfg.arr_proc_min) target.t_arr = to_seconds(*cfg.arr_proc_min, "--arr-proc-min");
  return o;
}

inline TripInputs trip_inputs(const RunConfig& cfg, const Dataset& ds) {
  if (cfg.origin_zone.empty()) throw InputError("--origin-zone is required");
  return {ds.segments, &ds.zones, &ds.rides, cfg.origin_zone, ds.range};
}

inline EvalOptions eval_options(const RunConfig& cfg) {
  EvalOptions o;
  o.trip.on_time_mode = cfg.on_time_mode;
  o.trip.grouping = cfg.grouping();
  o.threads = std::max(1u, cfg.threads);
  return o;
}

/// |D|: the configured range, else the span of arrival dates.
inline std::int64_t days_in_range(const Dataset& ds, const TripSet& trips) {
  if (ds.range) return ds.range->days();
  if (trips.trips.empty()) return 0;
  Date lo = trips.trips.front().arrival_date, hi = lo;
  for (const auto& t : trips.trips) {
    lo = std::min(lo, t.arrival_date);
    hi = std::max(hi, t.arrival_date);
  }
  return (hi - lo) + 1;
}

inline AnalysisResult run_analysis(const RunConfig& cfg, const Dataset& ds,
                                   const DwellOverrides& overrides = {}) {
  AnalysisResult r;
  r.trips = evaluate_trips(trip_inputs(cfg, ds), overrides, eval_options(cfg));
  r.day_stats = daily_zone_means(r.trips.trips);
  r.summaries = summarize(r.day_stats, days_in_range(ds, r.trips));
  return r;
}

inline void warn_unreached(const TripSet& t, std::ostream& err) {
  if (t.not_computable > 0)
    err << "warning: " << t.not_computable
        << " segment/zone trips skipped for lack of ride data; " << t.unreached_zones.size()
        << " zones never reached\n";
}

// ---------------------------------------------------------------- exporters

inline std::set<std::string> modes_of(const std::vector<ZonePeriodSummary>& summaries) {
  std::set<std::string> modes;
  for (const auto& s : summaries)
    for (const auto& [m, n] : s.fastest_counts) modes.insert(m);
  return modes;
}

inline void export_fastest(const RunConfig& cfg, const Dataset& ds,
                           const std::vector<ZonePeriodSummary>& summaries,
                           const OutputDir& out) {
  if (cfg.wants_geojson()) {
    for (DayPeriod p : kDayPeriods) {
      const auto m = by_zone(summaries, p);
      out.write_json("fastest_" + std::string(period_name(p)) + ".geojson",
                     zone_layer(ds.zones, [&](const Zone& z) -> std::optional<json> {
                       auto it = m.find(z.zone_id);
                       if (it == m.end()) return std::nullopt;
                       const auto& s = *it->second;
                       return json{{"period", period_name(p)},
                                   {"fastest_mode", s.fastest_mode.value_or("")},
                                   {"N_per_mode", counts_json(s.fastest_counts)},
                                   {"days_with_records", s.days_used}};
                     }));
    }
  }
  if (cfg.wants_csv()) {
    const auto modes = modes_of(summaries);
    std::ostringstream csv;
    csv << "zone_id,period,fastest_mode,days_with_records";
    for (const auto& m : modes) csv << ",N_" << m;
    csv << '\n';
    for (const auto& s : summaries) {
      csv << s.zone_id << ',' << period_name(s.period) << ',' << s.fastest_mode.value_or("")
          << ',' << s.days_used;
      for (const auto& m : modes) {
        auto it = s.fastest_counts.find(m);
        csv << ',' << (it == s.fastest_counts.end() ? 0 : it->second);
      }
      csv << '\n';
    }
    out.write("fastest.csv", csv.str());
  }
}

inline void export_fastest_time(const RunConfig& cfg, const Dataset& ds,
                                const std::vector<ZonePeriodSummary>& summaries,
                                const OutputDir& out) {
  if (cfg.wants_geojson()) {
    for (DayPeriod p : kDayPeriods) {
      const auto m = by_zone(summaries, p);
      out.write_json("fastest_time_" + std::string(period_name(p)) + ".geojson",
                     zone_layer(ds.zones, [&](const Zone& z) -> std::optional<json> {
                       auto it = m.find(z.zone_id);
                       if (it == m.end()) return std::nullopt;
                       const auto& s = *it->second;
                       return json{{"period", period_name(p)},
                                   {"fastest_mode", s.fastest_mode.value_or("")},
                                   {"N_per_mode", counts_json(s.fastest_counts)},
                                   {"E_bar_min", rounded(s.e_bar.minutes())},
                                   {"interval_bin", bin_name(s.bin)},
                                   {"days_used", s.days_used},
                                   {"coverage", rounded(s.coverage())}};
                     }));
    }
  }
  if (cfg.wants_csv()) {
    std::ostringstream csv;
    csv << "zone_id,period,fastest_mode,E_bar_min,interval_bin,days_used,days_in_range\n";
    for (const auto& s : summaries)
      csv << s.zone_id << ',' << period_name(s.period) << ',' << s.fastest_mode.value_or("")
          << ',' << fixed(s.e_bar.minutes()) << ',' << bin_name(s.bin) << ',' << s.days_used
          << ',' << s.days_in_range << '\n';
    out.write("fastest_time.csv", csv.str());

    const BinTable table = bin_zone_counts(summaries);
    std::ostringstream bins;
    bins << "mode,interval";
    for (DayPeriod p : kDayPeriods) bins << ',' << period_name(p);
    bins << '\n';
    for (const auto& mode : modes_of(summaries)) {
      for (IntervalBin b : kIntervalBins) {
        bins << mode << ',' << bin_name(b);
        for (DayPeriod p : kDayPeriods) {
          auto it = table.find({mode, p, b});
          bins << ',' << (it == table.end() ? 0 : it->second);
        }
        bins << '\n';
      }
    }
    out.write("interval_bins.csv", bins.str());
  }
}

inline void export_reliability(const RunConfig& cfg, const Dataset& ds,
                               const std::vector<ZonePeriodSummary>& summaries,
                               const OutputDir& out) {
  if (cfg.wants_geojson()) {
    for (DayPeriod p : kDayPeriods) {
      const auto m = by_zone(summaries, p);
      out.write_json("reliability_" + std::string(period_name(p)) + ".geojson",
                     zone_layer(ds.zones, [&](const Zone& z) -> std::optional<json> {
                       auto it = m.find(z.zone_id);
                       if (it == m.end()) return std::nullopt;
                       const auto& s = *it->second;
                       return json{{"period", period_name(p)},
                                   {"most_reliable_mode", s.most_reliable_mode.value_or("")},
                                   {"R_per_mode", counts_json(s.reliable_counts)},
                                   {"fastest_mode", s.fastest_mode.value_or("")}};
                     }));
    }
  }
  if (cfg.wants_csv()) {
    const auto modes = modes_of(summaries);
    std::ostringstream csv;
    csv << "zone_id,period,most_reliable_mode,fastest_mode,days_with_records";
    for (const auto& m : modes) csv << ",R_" << m;
    csv << '\n';
    for (const auto& s : summaries) {
      csv << s.zone_id << ',' << period_name(s.period) << ','
          << s.most_reliable_mode.value_or("") << ',' << s.fastest_mode.value_or("") << ','
          << s.days_used;
      for (const auto& m : modes) {
        auto it = s.reliable_counts.find(m);
        csv << ',' << (it == s.reliable_counts.end() ? 0 : it->second);
      }
      csv << '\n';
    }
    out.write("reliability.csv", csv.str());
  }
}

// ---------------------------------------------------------------- commands

inline int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Dataset ds = load_dataset(cfg);

  std::size_t daily_rows = 0;
  std::map<std::tuple<std::string, std::string, Date>, std::pair<bool, bool>> keys;
  for (const auto& r : ds.rides.records()) {
    auto& [has_period, has_daily] = keys[{r.origin_zone, r.dest_zone, r.date}];
    if (r.period == DayPeriod::DailyOnly) {
      ++daily_rows;
      has_daily = true;
    } else {
      has_period = true;
    }
  }
  std::size_t daily_only = 0;
  for (const auto& [k, v] : keys) daily_only += (!v.first && v.second) ? 1 : 0;

  json no_point = json::array();
  std::size_t no_density = 0;
  for (const auto& z : ds.zones.zones()) {
    if (!z.internal_point) no_point.push_back(z.zone_id);
    if (!z.population_density) ++no_density;
  }
  std::size_t cancelled = 0;
  for (const auto& s : ds.segments) cancelled += s.cancelled ? 1 : 0;

  json report = {
      {"dataset", cfg.dataset_id},
      {"ride_stats",
       {{"rows", ds.ride_report.loaded},
        {"skipped_lines", ds.ride_report.skipped},
        {"daily_rows", daily_rows},
        {"period_rows", ds.rides.size() - daily_rows},
        {"pair_days", keys.size()},
        {"daily_only_pair_days", daily_only},
        {"daily_fallback_share",
         rounded(keys.empty() ? 0.0
                              : static_cast<double>(daily_only) /
                                    static_cast<double>(keys.size()))}}},
      {"stations", ds.stations.size()},
      {"segments",
       {{"rows", ds.segment_report.loaded},
        {"outside_date_range", ds.segments_outside_range},
        {"weekly_schedule_rows", ds.schedule_rows},
        {"expanded_from_schedule", ds.expanded_segments},
        {"total", ds.segments.size()},
        {"cancelled", cancelled}}},
      {"zones",
       {{"count", ds.zones.size()},
        {"without_internal_point", no_point},
        {"without_population_density", no_density}}}};
  out << report.dump(2) << '\n';
  if (!cfg.out_dir.empty()) OutputDir(cfg.out_dir).write_json("validate_report.json", report);
  if (!no_point.empty())
    err << "warning: " << no_point.size()
        << " zones lack an internal point and are skipped by distance-based analytics\n";
  return kOk;
}

inline int cmd_fastest(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  const Dataset ds = load_dataset(cfg);
  const auto r = run_analysis(cfg, ds);
  warn_unreached(r.trips, err);
  export_fastest(cfg, ds, r.summaries, OutputDir(cfg.out_dir));
  return kOk;
}

inline int cmd_fastest_time(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  const Dataset ds = load_dataset(cfg);
  const auto r = run_analysis(cfg, ds);
  warn_unreached(r.trips, err);
  export_fastest_time(cfg, ds, r.summaries, OutputDir(cfg.out_dir));
  return kOk;
}

inline int cmd_reliability(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  const Dataset ds = load_dataset(cfg);
  const auto r = run_analysis(cfg, ds);
  warn_unreached(r.trips, err);
  export_reliability(cfg, ds, r.summaries, OutputDir(cfg.out_dir));
  return kOk;
}

inline int cmd_whatif(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  const Dataset ds = load_dataset(cfg);
  const DwellOverrides overrides = overrides_from(cfg);
  const auto base = run_analysis(cfg, ds);
  const auto alt = run_analysis(cfg, ds, overrides);
  warn_unreached(base.trips, err);
  const OutputDir out(cfg.out_dir);
  for (const auto& [name, res] : {std::pair{"baseline", &base}, std::pair{"override", &alt}}) {
    export_fastest_time(cfg, ds, res->summaries, out.sub(name));
    export_reliability(cfg, ds, res->summaries, out.sub(name));
  }

  std::map<std::pair<std::string, DayPeriod>,
           std::pair<const ZonePeriodSummary*, const ZonePeriodSummary*>>
      pairs;
  for (const auto& s : base.summaries) pairs[{s.zone_id, s.period}].first = &s;
  for (const auto& s : alt.summaries) pairs[{s.zone_id, s.period}].second = &s;
  std::ostringstream csv;
  csv << "zone_id,period,baseline_fastest_mode,override_fastest_mode,baseline_E_bar_min,"
         "override_E_bar_min,delta_min\n";
  for (const auto& [k, v] : pairs) {
    const auto* b = v.first;
    const auto* o = v.second;
    csv << k.first << ',' << period_name(k.second) << ','
        << (b ? b->fastest_mode.value_or("") : "") << ','
        << (o ? o->fastest_mode.value_or("") : "") << ',' << (b ? fixed(b->e_bar.minutes()) : "")
        << ',' << (o ? fixed(o->e_bar.minutes()) : "") << ','
        << (b && o ? fixed((o->e_bar - b->e_bar).minutes()) : "") << '\n';
  }
  if (cfg.wants_csv()) out.write("whatif.csv", csv.str());
  return kOk;
}

inline int cmd_legs(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  const Dataset ds = load_dataset(cfg);
  const TripSet trips = evaluate_trips(trip_inputs(cfg, ds), {}, eval_options(cfg));
  warn_unreached(trips, err);
  const auto res = leg_shares(trips.trips);
  if (res.zero_total_excluded)
    err << "warning: " << res.zero_total_excluded << " zero-length trips excluded\n";
  if (res.shares.empty()) throw ComputationError("no_trips", "no computable trips");
  std::ostringstream csv;
  csv << "city_pair,n_trips,to_pct,dep_pct,in_pct,arr_pct,from_pct\n";
  for (const auto& s : res.shares) {
    csv << s.city_pair << ',' << s.n_trips;
    for (double v : s.mean_pct) csv << ',' << fixed(v);
    csv << '\n';
  }
  OutputDir(cfg.out_dir).write("legs.csv", csv.str());
  return kOk;
}

inline int cmd_integration(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  const Dataset ds = load_dataset(cfg);
  std::vector<IntegrationFit> fits;
  std::vector<std::pair<StationRef, std::string>> failed;
  for (const auto& st : ds.stations.all()) {
    try {
      fits.push_back(airport_integration(*st, ds.rides, ds.zones, ds.range));
      if (!fits.back().zones_without_point.empty())
        err << "warning: station " << st->station_id << ": "
            << fits.back().zones_without_point.size()
            << " zones without internal point skipped\n";
    } catch (const FitUndefined& e) {
      failed.emplace_back(st, e.what());
    }
  }
  if (fits.empty()) throw FitUndefined("no station has enough daily ride data for a fit");
  const auto ranking = rank_by_slope(fits);
  std::map<std::string, std::size_t> rank_of;
  for (std::size_t i = 0; i < ranking.size(); ++i) rank_of[ranking[i]] = i + 1;

  const OutputDir out(cfg.out_dir);
  std::ostringstream csv, samples;
  csv << "rank,station_id,kind,n_samples,slope_min_per_km,intercept_min,max_range_km,status\n";
  samples << "station_id,zone_id,distance_km,mean_ride_min,days\n";
  for (const auto& id : ranking) {
    const auto& f = *std::find_if(fits.begin(), fits.end(),
                                  [&](const auto& x) { return x.station_id == id; });
    csv << rank_of[id] << ',' << id << ',' << kind_name(ds.stations.get(id)->kind) << ','
        << f.samples.size() << ',' << fixed(f.slope, 9) << ',' << fixed(f.intercept, 9) << ','
        << fixed(f.max_range_km) << ",ok\n";
    for (const auto& s : f.samples)
      samples << id << ',' << s.zone_id << ',' << fixed(s.distance_km) << ','
              << fixed(s.mean_ride_min) << ',' << s.days << '\n';
    if (cfg.wants_geojson()) {
      std::map<std::string, const IntegrationSample*> m;
      for (const auto& s : f.samples) m[s.zone_id] = &s;
      out.write_json("integration_" + id + ".geojson",
                     zone_layer(ds.zones, [&](const Zone& z) -> std::optional<json> {
                       auto it = m.find(z.zone_id);
                       if (it == m.end()) return std::nullopt;
                       return json{{"station_id", id},
                                   {"distance_km", rounded(it->second->distance_km)},
                                   {"mean_ride_min", rounded(it->second->mean_ride_min)},
                                   {"days", it->second->days}};
                     }));
    }
  }
  for (const auto& [st, why] : failed)
    csv << ',' << st->station_id << ',' << kind_name(st->kind) << ",0,,,,fit_undefined\n";
  out.write("integration.csv", csv.str());
  out.write("integration_samples.csv", samples.str());
  return kOk;
}

inline int cmd_weather_diff(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  auto a = csv::parse_date(cfg.date_a), b = csv::parse_date(cfg.date_b);
  if (!a || !b) throw InputError("--date-a and --date-b must be YYYY-MM-DD");
  const Dataset ds = load_dataset(cfg);
  if (ds.range && (!ds.range->contains(*a) || !ds.range->contains(*b)))
    throw InputError("--date-a and --date-b must lie within --from-date..--to-date");
  const TripSet trips = evaluate_trips(trip_inputs(cfg, ds), {}, eval_options(cfg));
  warn_unreached(trips, err);

  std::vector<ZoneDelta> deltas;
  for (auto grouping : {PeriodGrouping::ByPeriod, PeriodGrouping::WholeDay}) {
    const auto stats = daily_zone_means(trips.trips, grouping);
    const auto sa = summarize(filter_date(stats, *a), 1);
    const auto sb = summarize(filter_date(stats, *b), 1);
    auto d = weather_diff(sa, sb);
    std::move(d.begin(), d.end(), std::back_inserter(deltas));
  }

  const OutputDir out(cfg.out_dir);
  if (cfg.wants_geojson()) {
    std::vector<DayPeriod> layers(kDayPeriods.begin(), kDayPeriods.end());
    layers.push_back(DayPeriod::DailyOnly);
    for (DayPeriod p : layers) {
      std::map<std::string, const ZoneDelta*> m;
      for (const auto& d : deltas)
        if (d.period == p) m[d.zone_id] = &d;
      json layer = zone_layer(ds.zones, [&](const Zone& z) -> std::optional<json> {
        auto it = m.find(z.zone_id);
        if (it == m.end()) return std::nullopt;
        const auto& d = *it->second;
        json j = {{"period", period_name(p)}, {"presence", presence_name(d.presence)}};
        j["E_bar_a_min"] = d.e_bar_a ? json(rounded(d.e_bar_a->minutes())) : json(nullptr);
        j["E_bar_b_min"] = d.e_bar_b ? json(rounded(d.e_bar_b->minutes())) : json(nullptr);
        j["delta_min"] = d.delta ? json(rounded(d.delta->minutes())) : json(nullptr);
        j["disappeared"] = d.presence == Presence::Disappeared;
        return j;
      });
      out.write_json("weather_diff_" + std::string(period_name(p)) + ".geojson", layer);
    }
  }
  if (cfg.wants_csv()) {
    std::ostringstream csv;
    csv << "zone_id,period,E_bar_a_min,E_bar_b_min,delta_min,presence\n";
    for (const auto& d : deltas)
      csv << d.zone_id << ',' << period_name(d.period) << ','
          << (d.e_bar_a ? fixed(d.e_bar_a->minutes()) : "") << ','
          << (d.e_bar_b ? fixed(d.e_bar_b->minutes()) : "") << ','
          << (d.delta ? fixed(d.delta->minutes()) : "") << ',' << presence_name(d.presence)
          << '\n';
    out.write("weather_diff.csv", csv.str());
  }
  return kOk;
}

inline int cmd_delay(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  if (cfg.segment_id.empty()) throw InputError("--segment-id is required");
  const Dataset ds = load_dataset(cfg);
  auto it = std::find_if(ds.segments.begin(), ds.segments.end(),
                         [&](const auto& s) { return s.segment_id == cfg.segment_id; });
  if (it == ds.segments.end()) throw InputError("unknown segment '" + cfg.segment_id + "'");
  if (it->cancelled) throw InputError("segment '" + cfg.segment_id + "' is cancelled");
  ScheduledSegment seg = *it;
  if (!seg.actual_arr) {
    if (!cfg.on_time_mode) throw InputError("segment has no actual arrival");
    seg.actual_arr = seg.sched_arr;
  }
  const DwellProfile dwell = overrides_from(cfg).resolve(*seg.arr_station);
  const auto res = delay_sensitivity(seg, dwell, ds.rides, ds.zones.zones());
  if (res.uniform_weights)
    err << "warning: population density missing, using uniform zone weights\n";

  const OutputDir out(cfg.out_dir);
  std::ostringstream csv;
  csv << "segment_id,scheduled_egress_period,actual_egress_period,scheduled_egress_date,"
         "actual_egress_date,weighted_mean_delta_s,max_of_max_delta_s,zones_used,"
         "zones_excluded,uniform_weights\n";
  csv << res.segment_id << ',' << period_name(res.scheduled_egress_period) << ','
      << period_name(res.actual_egress_period) << ',' << format_date(res.scheduled_egress_date)
      << ',' << format_date(res.actual_egress_date) << ',' << fixed(res.weighted_mean_delta_s)
      << ',' << res.max_of_max_delta_s << ',' << res.zones.size() << ','
      << res.excluded_zones.size() << ',' << (res.uniform_weights ? 1 : 0) << '\n';
  out.write("delay.csv", csv.str());

  if (cfg.wants_csv()) {
    std::ostringstream zones;
    zones << "zone_id,delta_mean_s,delta_max_s,weight\n";
    for (const auto& z : res.zones)
      zones << z.zone_id << ',' << z.delta_mean_s << ',' << z.delta_max_s << ','
            << fixed(z.weight, 9) << '\n';
    out.write("delay_zones.csv", zones.str());
  }
  if (cfg.wants_geojson()) {
    std::map<std::string, const ZoneDelayDelta*> m;
    for (const auto& z : res.zones) m[z.zone_id] = &z;
    out.write_json("delay_zones.geojson",
                   zone_layer(ds.zones, [&](const Zone& z) -> std::optional<json> {
                     auto it = m.find(z.zone_id);
                     if (it == m.end()) return std::nullopt;
                     return json{{"delta_mean_s", it->second->delta_mean_s},
                                 {"delta_max_s", it->second->delta_max_s},
                                 {"weight", rounded(it->second->weight)}};
                   }));
  }
  return kOk;
}

// ---------------------------------------------------------------- entry point

inline void print_error(std::ostream& err, const std::string& kind, const std::string& message,
                        int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

inline const std::set<std::string> kInputPathKeys = {"ride-stats", "segments", "weekly-schedule",
                                                     "stations", "zones"};

/// Input paths in a config file are relative to the file itself.
inline std::string resolve_relative(const std::string& config_path, const std::string& value) {
  const std::filesystem::path p(value);
  if (value.empty() || p.is_absolute()) return value;
  return (std::filesystem::path(config_path).parent_path() / p).lexically_normal().string();
}

/// Parses arguments and runs one subcommand. Returns the process exit code:
/// 0 ok, 2 input error, 3 computation error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Door-to-door travel time analytics", "d2d"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path;
  std::map<std::string, std::function<void(const std::string&)>> setters;
  auto text = [&](const std::string& name, std::string& field, const std::string& help) {
    auto* opt = app.add_option("--" + name, field, help);
    setters[name] = [&field](const std::string& v) { field = v; };
    return opt;
  };
  app.add_option("--config", config_path, "key=value defaults file")->envname("D2D_CONFIG");
  text("ride-stats", cfg.ride_stats, "ride_stats.csv");
  text("segments", cfg.segments, "segments.csv with actual times");
  text("weekly-schedule", cfg.weekly_schedule, "weekly_schedule.csv");
  text("stations", cfg.stations, "stations.csv");
  text("zones", cfg.zones, "zones.geojson");
  text("from-date", cfg.from_date, "first date (YYYY-MM-DD)");
  text("to-date", cfg.to_date, "last date (YYYY-MM-DD)");
  text("origin-zone", cfg.origin_zone, "zone every trip starts from");
  text("dataset-id", cfg.dataset_id, "label recorded in reports");
  text("out-dir", cfg.out_dir, "output directory");
  text("format", cfg.format, "geojson, csv or both")
      ->check(CLI::IsMember({"geojson", "csv", "both"}));
  text("group-by", cfg.group_by, "arrival or departure instant decides day and period")
      ->check(CLI::IsMember({"arrival", "departure"}));
  text("override-kind", cfg.override_kind, "station kind the processing overrides apply to")
      ->check(CLI::IsMember({"air", "rail"}));
  app.add_flag("--on-time-mode", cfg.on_time_mode, "missing actual times mean on time");
  setters["on-time-mode"] = [&](const std::string& v) {
    cfg.on_time_mode = v == "1" || v == "true" || v == "yes";
  };
  app.add_option("--dep-proc-min", cfg.dep_proc_min, "departure processing time override");
  setters["dep-proc-min"] = [&](const std::string& v) { cfg.dep_proc_min = std::stod(v); };
  app.add_option("--arr-proc-min", cfg.arr_proc_min, "arrival processing time override");
  setters["arr-proc-min"] = [&](const std::string& v) { cfg.arr_proc_min = std::stod(v); };
  app.add_option("--threads", cfg.threads, "worker threads for trip evaluation");
  setters["threads"] = [&](const std::string& v) {
    cfg.threads = static_cast<unsigned>(std::stoul(v));
  };

  using Handler = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* s = app.add_subcommand(name, help);
    commands.emplace_back(s, h);
    return s;
  };
  sub("validate", "parse and check every input", cmd_validate);
  sub("fastest", "fastest mode counts per zone and period", cmd_fastest);
  sub("fastest-time", "fastest average door-to-door time per zone", cmd_fastest_time);
  sub("reliability", "most reliable mode per zone and period", cmd_reliability);
  sub("whatif", "baseline vs overridden processing times", cmd_whatif);
  sub("legs", "share of each trip phase per city pair", cmd_legs);
  sub("integration", "access time vs distance regression per station", cmd_integration);
  auto* weather = sub("weather-diff", "compare two single days", cmd_weather_diff);
  weather->add_option("--date-a", cfg.date_a, "reference date")->required();
  weather->add_option("--date-b", cfg.date_b, "compared date")->required();
  auto* delay = sub("delay", "passenger delay of one arrival", cmd_delay);
  delay->add_option("--segment-id", cfg.segment_id, "segment to analyse")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (!config_path.empty()) {
      for (const auto& [key, value] : read_config_file(config_path)) {
        auto set = setters.find(key);
        if (set == setters.end()) throw InputError("unknown config key '" + key + "'");
        const CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (opt && opt->count() > 0) continue;  // command line wins
        set->second(kInputPathKeys.count(key) ? resolve_relative(config_path, value) : value);
      }
    }
    for (const auto& [s, handler] : commands)
      if (s->parsed()) return handler(cfg, out, err);
    return kInputError;
  } catch (const InputError& e) {
    print_error(err, "input_error", e.what(), kInputError);
    return kInputError;
  } catch (const ComputationError& e) {
    print_error(err, e.kind(), e.what(), kComputationError);
    return kComputationError;
  } catch (const std::invalid_argument& e) {
    print_error(err, "invalid_argument", e.what(), kInputError);
    return kInputError;
  } catch (const std::exception& e) {
    print_error(err, "computation_error", e.what(), kComputationError);
    return kComputationError;
  }
}

} // namespace d2d::cli
