#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "builders.hpp"
#include "d2d/d2d.hpp"
#include "random_fixture.hpp"

using namespace d2d;

namespace {

TripRecord with_phases(const std::string& dep, const std::string& arr, int to, int dp, int in,
                       int ar, int from) {
  TripRecord t;
  t.dep_station_id = dep;
  t.arr_station_id = arr;
  t.phases = {minutes(to), minutes(dp), minutes(in), minutes(ar), minutes(from), Seconds(0)};
  return t;
}

} // namespace

TEST(LegShares, WorkedExample) {
  std::vector<TripRecord> t = {with_phases("AMS", "CDG", 30, 90, 80, 45, 25)};
  const auto r = leg_shares(t);
  ASSERT_EQ(r.shares.size(), 1u);
  const auto& p = r.shares[0].mean_pct;
  EXPECT_NEAR(p[kTo], 11.11, 0.005);
  EXPECT_NEAR(p[kDep], 33.33, 0.005);
  EXPECT_NEAR(p[kIn], 29.63, 0.005);
  EXPECT_NEAR(p[kArr], 16.67, 0.005);
  EXPECT_NEAR(p[kFrom], 9.26, 0.005);
  EXPECT_EQ(r.shares[0].city_pair, "AMS-CDG");
}

TEST(LegShares, SinglePhaseAndEqualPhases) {
  std::vector<TripRecord> t = {with_phases("A", "B", 0, 0, 70, 0, 0),
                               with_phases("C", "D", 9, 9, 9, 9, 9)};
  const auto r = leg_shares(t);
  ASSERT_EQ(r.shares.size(), 2u);
  EXPECT_EQ(r.shares[0].city_pair, "C-D");
  for (double v : r.shares[0].mean_pct) EXPECT_NEAR(v, 20.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.shares[1].mean_pct[kIn], 100.0);
}

TEST(LegShares, ZeroTotalExcluded) {
  std::vector<TripRecord> t = {with_phases("A", "B", 0, 0, 0, 0, 0),
                               with_phases("A", "B", 1, 1, 1, 1, 1)};
  const auto r = leg_shares(t);
  EXPECT_EQ(r.zero_total_excluded, 1u);
  EXPECT_EQ(r.shares.at(0).n_trips, 1u);
}

TEST(LegShares, PercentagesSumToHundredAndSortIsStable) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> len(0, 200);
  std::vector<TripRecord> t;
  for (int i = 0; i < 400; ++i) {
    auto r = with_phases("S" + std::to_string(i % 9), "X", len(rng), len(rng), len(rng) + 1,
                         len(rng), len(rng));
    const auto pct = phase_percentages(r.phases);
    EXPECT_NEAR(std::accumulate(pct.begin(), pct.end(), 0.0), 100.0, 1e-9);
    for (double v : pct) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 100.0);
    }
    t.push_back(std::move(r));
  }
  const auto r = leg_shares(t);
  ASSERT_EQ(r.shares.size(), 9u);
  for (std::size_t i = 1; i < r.shares.size(); ++i)
    EXPECT_LE(r.shares[i - 1].mean_pct[kIn], r.shares[i].mean_pct[kIn]);
  // Same input in reverse gives the same ordering.
  std::reverse(t.begin(), t.end());
  const auto r2 = leg_shares(t);
  for (std::size_t i = 0; i < r.shares.size(); ++i)
    EXPECT_EQ(r.shares[i].city_pair, r2.shares[i].city_pair);
}

TEST(Ols, RecoversExactLine) {
  std::vector<double> x = {3.5, 10.0, 17.25, 24.0, 40.125, 51.0};
  std::vector<double> y;
  for (double v : x) y.push_back(0.8 * v + 5.0);
  const auto f = ols_fit(x, y);
  EXPECT_NEAR(f.slope, 0.8, 1e-9);
  EXPECT_NEAR(f.intercept, 5.0, 1e-9);
}

TEST(Ols, DegenerateDesigns) {
  std::vector<double> x = {5, 5, 5}, y = {1, 2, 3};
  EXPECT_THROW(ols_fit(x, y), FitUndefined);
  std::vector<double> one = {1};
  EXPECT_THROW(ols_fit(one, one), FitUndefined);
}

TEST(Ols, ResidualsOrthogonalAndOrderInvariant) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(0, 60), noise(-5, 5);
  for (int round = 0; round < 50; ++round) {
    std::vector<double> x, y;
    for (int i = 0; i < 25; ++i) {
      x.push_back(d(rng));
      y.push_back(0.6 * x.back() + 12 + noise(rng));
    }
    const auto f = ols_fit(x, y);
    double dot = 0, sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (f.slope * x[i] + f.intercept);
      dot += r * x[i];
      sum += r;
    }
    EXPECT_NEAR(dot, 0.0, 1e-6);
    EXPECT_NEAR(sum, 0.0, 1e-6);
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<double> xs, ys;
    for (auto i : idx) {
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
    const auto g = ols_fit(xs, ys);
    EXPECT_NEAR(f.slope, g.slope, 1e-9);
    EXPECT_NEAR(f.intercept, g.intercept, 1e-9);
  }
}

namespace {

// Zones east of a station on the equator, ride times a*distance + b minutes.
struct IntegrationSetup {
  ZoneSet zones;
  std::vector<ZoneRideStat> rows;
  Station station;

  IntegrationSetup(const std::string& id, double a, double b) {
    station.station_id = id;
    station.zone_id = "S_" + id;
    station.location = {0.0, 0.0};
    for (int i = 1; i <= 6; ++i) {
      const GeoPoint p{0.0, 0.1 * i};
      zones.add({"Z" + std::to_string(i), p, 100.0});
      const double km = geodesic_distance(p, station.location);
      const auto s = static_cast<std::int64_t>(std::llround(60.0 * (a * km + b)));
      for (int day = 1; day <= 3; ++day)
        rows.push_back({"Z" + std::to_string(i), station.zone_id, Date(2018, 1, day),
                        DayPeriod::DailyOnly, s, s, s});
    }
    zones.add({"NOPOINT", std::nullopt, 10.0});
    rows.push_back({"NOPOINT", station.zone_id, Date(2018, 1, 1), DayPeriod::DailyOnly, 60, 60, 60});
    // Period rows are ignored by the fit.
    rows.push_back({"Z1", station.zone_id, Date(2018, 1, 1), DayPeriod::AM, 9999, 9999, 9999});
  }

  IntegrationFit fit() const { return airport_integration(station, RideStatIndex(rows), zones); }
};

} // namespace

TEST(Integration, RecoversLineFromRideStats) {
  const auto f = IntegrationSetup("X", 0.8, 5.0).fit();
  // Ride stats carry whole seconds, so the line is recovered to rounding.
  EXPECT_NEAR(f.slope, 0.8, 1e-3);
  EXPECT_NEAR(f.intercept, 5.0, 1e-2);
  EXPECT_EQ(f.samples.size(), 6u);
  EXPECT_EQ(f.samples[0].days, 3);
  EXPECT_NEAR(f.max_range_km, geodesic_distance({0, 0}, {0, 0.6}), 1e-9);
  ASSERT_EQ(f.zones_without_point.size(), 1u);
  EXPECT_EQ(f.zones_without_point[0], "NOPOINT");
}

TEST(Integration, EquidistantZonesAreUndefined) {
  Station st;
  st.station_id = "X";
  st.zone_id = "SZ";
  st.location = {0, 0};
  ZoneSet zones;
  zones.add({"A", GeoPoint{0, 1}, 1.0});
  zones.add({"B", GeoPoint{1, 0}, 1.0});
  std::vector<ZoneRideStat> rows = {{"A", "SZ", Date(2018, 1, 1), DayPeriod::DailyOnly, 60, 60, 60},
                                    {"B", "SZ", Date(2018, 1, 1), DayPeriod::DailyOnly, 90, 90, 90}};
  EXPECT_THROW(airport_integration(st, RideStatIndex(rows), zones), FitUndefined);
}

TEST(Integration, DoubledTimesDoubleSlopeAndRankingIsScaleInvariant) {
  const auto a = IntegrationSetup("A", 0.5, 4.0).fit();
  const auto b = IntegrationSetup("B", 1.0, 8.0).fit();
  const auto c = IntegrationSetup("C", 0.7, 2.0).fit();
  EXPECT_NEAR(b.slope, 2.0 * a.slope, 1e-3);
  EXPECT_EQ(rank_by_slope({a, b, c}), (std::vector<std::string>{"A", "C", "B"}));
  const auto a2 = IntegrationSetup("A", 1.0, 8.0).fit();
  const auto b2 = IntegrationSetup("B", 2.0, 16.0).fit();
  const auto c2 = IntegrationSetup("C", 1.4, 4.0).fit();
  EXPECT_EQ(rank_by_slope({b2, c2, a2}), (std::vector<std::string>{"A", "C", "B"}));
}

namespace {

ZonePeriodSummary summary(const std::string& zone, DayPeriod p, int e_bar_min) {
  ZonePeriodSummary s;
  s.zone_id = zone;
  s.period = p;
  s.e_bar = Rational::of(minutes(e_bar_min));
  return s;
}

} // namespace

TEST(Weather, IdenticalInputsGiveZero) {
  std::vector<ZonePeriodSummary> a = {summary("Z1", DayPeriod::AM, 250),
                                      summary("Z2", DayPeriod::PM, 260)};
  for (const auto& d : weather_diff(a, a)) {
    EXPECT_EQ(d.presence, Presence::Both);
    EXPECT_EQ(d.delta->num(), 0);
  }
}

TEST(Weather, MissingZoneDisappears) {
  std::vector<ZonePeriodSummary> a = {summary("Z1", DayPeriod::AM, 250),
                                      summary("Z2", DayPeriod::AM, 260)};
  std::vector<ZonePeriodSummary> b = {summary("Z1", DayPeriod::AM, 270),
                                      summary("Z3", DayPeriod::AM, 200)};
  const auto d = weather_diff(a, b);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].zone_id, "Z1");
  EXPECT_EQ(*d[0].delta, Rational::of(minutes(20)));
  EXPECT_EQ(d[1].presence, Presence::Disappeared);
  EXPECT_FALSE(d[1].delta);
  EXPECT_EQ(d[2].presence, Presence::Appeared);
}

TEST(Weather, EgressShiftPropagates) {
  auto f = fixture::make_random_fixture(77);
  std::vector<ZoneRideStat> shifted = f.rides.records();
  for (auto& r : shifted)
    if (r.origin_zone != "O") {
      r.mean_s += 1800;
      r.min_s += 1800;
      r.max_s += 1800;
    }
  // Group by door departure so the extra egress time cannot move trips between periods.
  EvalOptions opts;
  opts.trip.grouping = GroupingInstant::DoorDeparture;
  const auto a = analyze(f.inputs(), f.range.days(), {}, opts);
  RideStatIndex slower(std::move(shifted));
  TripInputs in = f.inputs();
  in.rides = &slower;
  const auto b = analyze(in, f.range.days(), {}, opts);
  const auto diff = weather_diff(a.summaries, b.summaries);
  ASSERT_FALSE(diff.empty());
  for (const auto& d : diff) {
    ASSERT_EQ(d.presence, Presence::Both);
    EXPECT_EQ(*d.delta, Rational::of(minutes(30)));
  }
}

TEST(Weather, Antisymmetry) {
  auto f = fixture::make_random_fixture(5);
  auto g = fixture::make_random_fixture(6);
  const auto a = analyze(f.inputs(), f.range.days()).summaries;
  const auto b = analyze(g.inputs(), g.range.days()).summaries;
  const auto ab = weather_diff(a, b);
  const auto ba = weather_diff(b, a);
  ASSERT_EQ(ab.size(), ba.size());
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (ab[i].presence != Presence::Both) continue;
    EXPECT_EQ(*ab[i].delta, -*ba[i].delta);
  }
}

namespace {

struct DelaySetup {
  StationRef dep = build::station("AMS", StationKind::Air, "A", "Europe/Amsterdam", 90, 45);
  StationRef arr = build::station("ORY", StationKind::Air, "P_ORY", "Europe/Paris", 90, 45);
  std::vector<ZoneRideStat> rows;
  std::vector<Zone> zones;

  // Both zones: PM mean 20 / max 30 minutes.
  DelaySetup(int late_z1 = 30, int late_z2 = 40, int late_max_z1 = 45, int late_max_z2 = 70) {
    zones = {{"Z1", GeoPoint{48.8, 2.3}, 1.0}, {"Z2", GeoPoint{48.9, 2.3}, 3.0}};
    const Date d(2018, 1, 4);
    rows = {{"P_ORY", "Z1", d, DayPeriod::PM, 1200, 900, 1800},
            {"P_ORY", "Z2", d, DayPeriod::PM, 1200, 900, 1800},
            {"P_ORY", "Z1", d, DayPeriod::LateEvening, late_z1 * 60LL, 600, late_max_z1 * 60LL},
            {"P_ORY", "Z2", d, DayPeriod::LateEvening, late_z2 * 60LL, 600, late_max_z2 * 60LL},
            {"P_ORY", "Z1", d, DayPeriod::Midday, 900, 600, 1500},
            {"P_ORY", "Z2", d, DayPeriod::Midday, 600, 300, 1200}};
  }

  // Scheduled 18:02, egress at 18:47 (PM); actual arrival `delay` minutes later.
  DelaySensitivity run(int delay) const {
    auto seg = build::segment("KL1245", "ORY", dep, arr, build::local(dep->tz, 2018, 1, 4, 16, 40),
                              build::local(arr->tz, 2018, 1, 4, 18, 2), delay, delay);
    return delay_sensitivity(seg, arr->dwell, RideStatIndex(rows), zones);
  }
};

} // namespace

TEST(Delay, DensityWeightedMean) {
  const auto r = DelaySetup().run(16);
  EXPECT_EQ(r.scheduled_egress_period, DayPeriod::PM);
  EXPECT_EQ(r.actual_egress_period, DayPeriod::LateEvening);
  EXPECT_NEAR(r.weighted_mean_delta_s, 17.5 * 60, 1e-9);
  EXPECT_EQ(r.max_of_max_delta_s, 40 * 60);
  EXPECT_FALSE(r.uniform_weights);
  EXPECT_DOUBLE_EQ(r.zones[0].weight + r.zones[1].weight, 1.0);
}

TEST(Delay, SamePeriodIsZero) {
  const auto r = DelaySetup().run(5);
  EXPECT_EQ(r.scheduled_egress_period, r.actual_egress_period);
  EXPECT_EQ(r.weighted_mean_delta_s, 0.0);
  EXPECT_EQ(r.max_of_max_delta_s, 0);
}

TEST(Delay, UniformDensityGivesPlainMean) {
  DelaySetup s;
  s.zones[0].population_density = 7.0;
  s.zones[1].population_density = 7.0;
  EXPECT_NEAR(s.run(16).weighted_mean_delta_s, 15.0 * 60, 1e-9);
  s.zones[1].population_density.reset();
  const auto r = s.run(16);
  EXPECT_TRUE(r.uniform_weights);
  EXPECT_NEAR(r.weighted_mean_delta_s, 15.0 * 60, 1e-9);
}

TEST(Delay, DensityScaleInvariance) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> scale(0.01, 1000.0);
  const auto base = DelaySetup().run(16);
  for (int i = 0; i < 50; ++i) {
    DelaySetup s;
    const double k = scale(rng);
    for (auto& z : s.zones) z.population_density = *z.population_density * k;
    const auto r = s.run(16);
    EXPECT_NEAR(r.weighted_mean_delta_s, base.weighted_mean_delta_s, 1e-9);
    EXPECT_EQ(r.max_of_max_delta_s, base.max_of_max_delta_s);
  }
}

TEST(Delay, EarlyArrivalIsNegative) {
  // 170 minutes early: egress at 15:57 instead of 18:47.
  const auto r = DelaySetup().run(-170);
  EXPECT_EQ(r.actual_egress_period, DayPeriod::Midday);
  EXPECT_NEAR(r.weighted_mean_delta_s, (1.0 * -300 + 3.0 * -600) / 4.0, 1e-9);
  EXPECT_EQ(r.max_of_max_delta_s, -300);
}

TEST(Delay, ZonesWithoutBothPeriodsAreExcluded) {
  DelaySetup s;
  s.zones.push_back({"Z3", GeoPoint{48.7, 2.3}, 50.0});
  s.rows.push_back({"P_ORY", "Z3", Date(2018, 1, 4), DayPeriod::PM, 600, 600, 600});
  const auto r = s.run(16);
  ASSERT_EQ(r.excluded_zones.size(), 1u);
  EXPECT_EQ(r.excluded_zones[0], "Z3");
  EXPECT_NEAR(r.weighted_mean_delta_s, 17.5 * 60, 1e-9);
}

TEST(Delay, NoZoneWithBothPeriods) {
  DelaySetup s;
  std::erase_if(s.rows, [](const ZoneRideStat& r) { return r.period == DayPeriod::LateEvening; });
  EXPECT_THROW(s.run(16), SensitivityUndefined);
}
