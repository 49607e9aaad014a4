#include <gtest/gtest.h>

#include <random>

#include "builders.hpp"
#include "d2d/d2d.hpp"

using namespace d2d;

TEST(Period, Examples) {
  EXPECT_EQ(classify_period(419), DayPeriod::EarlyMorning);
  EXPECT_EQ(classify_period(420), DayPeriod::AM);
  EXPECT_EQ(classify_period(0), DayPeriod::EarlyMorning);
  EXPECT_EQ(classify_period(1439), DayPeriod::LateEvening);
}

TEST(Period, PartitionOfTheDay) {
  for (int m = 0; m < 1440; ++m) {
    const DayPeriod p = classify_period(m);
    DayPeriod expect = m < 420    ? DayPeriod::EarlyMorning
                       : m < 600  ? DayPeriod::AM
                       : m < 960  ? DayPeriod::Midday
                       : m < 1140 ? DayPeriod::PM
                                  : DayPeriod::LateEvening;
    EXPECT_EQ(p, expect) << m;
    const auto [lo, hi] = period_interval(p);
    EXPECT_LE(lo, m);
    EXPECT_LT(m, hi);
  }
}

TEST(Period, RejectsOutOfRange) {
  EXPECT_THROW(classify_period(-1), std::invalid_argument);
  EXPECT_THROW(classify_period(1440), std::invalid_argument);
}

TEST(Period, CodesRoundTrip) {
  for (int c = 0; c <= 5; ++c) EXPECT_EQ(period_code(period_from_code(c).value()), c);
  EXPECT_FALSE(period_from_code(6).has_value());
  EXPECT_EQ(period_name(DayPeriod::DailyOnly), "daily");
}

TEST(Rational, ExactArithmetic) {
  Rational a = Rational::of(Seconds(10));
  Rational third = a / 3;
  EXPECT_EQ(third + third + third, a);
  EXPECT_LT(third, a);
  EXPECT_EQ((a - a).num(), 0);
  EXPECT_EQ((Rational::of(Seconds(7)) / 2).den(), 2);
  EXPECT_THROW(a / 0, std::invalid_argument);
}

TEST(Geodesic, OneDegreeOnEquator) {
  EXPECT_NEAR(geodesic_distance({0, 0}, {0, 1}), 111.1949, 1e-3);
}

TEST(Geodesic, HalfCircumference) {
  // pi * R with R = 6371.0088 km
  EXPECT_NEAR(geodesic_distance({0, 0}, {0, 180}), 20015.1144, 1e-3);
}

TEST(Geodesic, MetricProperties) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  for (int i = 0; i < 500; ++i) {
    GeoPoint a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)}, c{lat(rng), lon(rng)};
    EXPECT_EQ(geodesic_distance(a, a), 0.0);
    EXPECT_NEAR(geodesic_distance(a, b), geodesic_distance(b, a), 1e-9);
    EXPECT_LE(geodesic_distance(a, c), geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-6);
  }
}

TEST(Geodesic, InvalidCoordinates) {
  EXPECT_THROW(geodesic_distance({91, 0}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(geodesic_distance({0, 0}, {0, 181}), std::invalid_argument);
}

TEST(Dwell, AirportTable) {
  const std::map<std::string, std::pair<int, int>> expected = {
      {"ATL", {110, 60}}, {"BOS", {105, 40}}, {"DCA", {100, 35}}, {"LAX", {125, 65}},
      {"SEA", {105, 50}}, {"SFO", {105, 45}}, {"AMS", {90, 45}},  {"CDG", {90, 45}},
      {"ORY", {90, 45}}};
  for (const auto& [id, v] : expected) {
    auto d = default_dwell(id, StationKind::Air);
    ASSERT_TRUE(d) << id;
    EXPECT_EQ(d->t_sec_departure, minutes(v.first)) << id;
    EXPECT_EQ(d->t_arr, minutes(v.second)) << id;
  }
  EXPECT_FALSE(default_dwell("JFK", StationKind::Air));
  auto rail = default_dwell("GDN", StationKind::Rail);
  ASSERT_TRUE(rail);
  EXPECT_EQ(rail->t_sec_departure, minutes(15));
  EXPECT_EQ(rail->t_arr, minutes(10));
}

TEST(Dwell, OverridesArePerKindAndPerField) {
  auto air = build::station("AMS", StationKind::Air, "Z", "Europe/Amsterdam", 90, 45);
  auto rail = build::station("GDN", StationKind::Rail, "Z", "Europe/Paris", 15, 10);
  DwellOverrides o;
  o.air.t_sec_departure = minutes(60);
  EXPECT_EQ(o.resolve(*air).t_sec_departure, minutes(60));
  EXPECT_EQ(o.resolve(*air).t_arr, minutes(45));
  EXPECT_EQ(o.resolve(*rail), rail->dwell);
}

namespace {

struct WorkedTrip {
  Zone origin{"O", std::nullopt, std::nullopt};
  Zone dest{"D", std::nullopt, std::nullopt};
  StationRef dep = build::station("DEP", StationKind::Air, "ZD", "UTC", 90, 45);
  StationRef arr = build::station("ARR", StationKind::Air, "ZA", "UTC", 90, 45);
  build::MapRides rides;

  WorkedTrip() {
    for (DayPeriod p : kDayPeriods) {
      rides.set("O", "ZD", Date(2018, 1, 2), p, 30, 25, 40);
      rides.set("ZA", "D", Date(2018, 1, 2), p, 25, 20, 35);
    }
  }

  TripRecord run(int dep_delay, int arr_delay) {
    auto seg = build::segment("S", "M", dep, arr, build::local(dep->tz, 2018, 1, 2, 12, 0),
                              build::local(dep->tz, 2018, 1, 2, 13, 20), dep_delay, arr_delay);
    return compute_trip(seg, origin, dest, dep->dwell, arr->dwell, rides);
  }
};

} // namespace

TEST(Trip, WorkedExampleTotals270) {
  WorkedTrip w;
  const auto t = w.run(0, 0);
  EXPECT_EQ(t.phases.t_to, minutes(30));
  EXPECT_EQ(t.phases.t_dep, minutes(90));
  EXPECT_EQ(t.phases.t_in, minutes(80));
  EXPECT_EQ(t.phases.t_arr, minutes(45));
  EXPECT_EQ(t.phases.t_from, minutes(25));
  EXPECT_EQ(t.total(), minutes(270));
}

TEST(Trip, DepartureDelayAddsWaiting) {
  WorkedTrip w;
  const auto t = w.run(16, 16);
  EXPECT_EQ(t.phases.t_wait, minutes(16));
  EXPECT_EQ(t.phases.t_dep, minutes(106));
  EXPECT_EQ(t.total(), minutes(286));
}

TEST(Trip, EarlyDepartureDoesNotCreditWaiting) {
  WorkedTrip w;
  const auto t = w.run(-5, -5);
  EXPECT_EQ(t.phases.t_wait, Seconds(0));
  EXPECT_EQ(t.phases.t_dep, minutes(90));
}

TEST(Trip, ZeroPhases) {
  Zone z{"Z", std::nullopt, std::nullopt};
  auto st = build::station("S1", StationKind::Rail, "Z", "UTC", 0, 0);
  auto st2 = build::station("S2", StationKind::Rail, "Z", "UTC", 0, 0);
  build::MapRides rides;
  for (DayPeriod p : kDayPeriods) rides.set("Z", "Z", Date(2018, 1, 2), p, 0, 0, 0);
  auto seg = build::segment("S", "M", st, st2, build::local(st->tz, 2018, 1, 2, 12, 0),
                            build::local(st->tz, 2018, 1, 2, 12, 1));
  const auto t = compute_trip(seg, z, z, st->dwell, st2->dwell, rides);
  EXPECT_EQ(t.total(), minutes(1));
}

TEST(Trip, InVehicleTimeAcrossTimeZones) {
  auto ny = build::station("JFK", StationKind::Air, "ZN", "America/New_York", 90, 45);
  auto la = build::station("LAX", StationKind::Air, "ZL", "America/Los_Angeles", 125, 65);
  // Local clocks both read 09:00; the flight takes three hours.
  auto seg = build::segment("S", "M", ny, la, build::local(ny->tz, 2018, 1, 2, 9, 0),
                            build::local(la->tz, 2018, 1, 2, 9, 0));
  build::MapRides rides;
  for (DayPeriod p : kDayPeriods) {
    rides.set("O", "ZN", Date(2018, 1, 2), p, 30, 25, 40);
    rides.set("ZL", "D", Date(2018, 1, 2), p, 25, 20, 35);
  }
  Zone o{"O", std::nullopt, std::nullopt}, d{"D", std::nullopt, std::nullopt};
  const auto t = compute_trip(seg, o, d, ny->dwell, la->dwell, rides);
  EXPECT_EQ(t.phases.t_in, std::chrono::hours(3));
  // Egress starts 10:05 Los Angeles time, door arrival 10:30.
  EXPECT_EQ(t.arrival_period, DayPeriod::Midday);
}

TEST(Trip, AccessPeriodIsTakenAtStationDeadline) {
  WorkedTrip w;
  build::MapRides rides;
  // Departure 08:00 with 90 minutes processing: deadline 06:30 is early morning.
  rides.set("O", "ZD", Date(2018, 1, 2), DayPeriod::EarlyMorning, 30, 25, 40);
  for (DayPeriod p : kDayPeriods) rides.set("ZA", "D", Date(2018, 1, 2), p, 25, 20, 35);
  auto seg = build::segment("S", "M", w.dep, w.arr, build::local(w.dep->tz, 2018, 1, 2, 8, 0),
                            build::local(w.dep->tz, 2018, 1, 2, 9, 0));
  EXPECT_NO_THROW(compute_trip(seg, w.origin, w.dest, w.dep->dwell, w.arr->dwell, rides));
}

TEST(Trip, ArrivalAfterMidnightBelongsToNextDay) {
  WorkedTrip w;
  build::MapRides rides;
  for (DayPeriod p : kDayPeriods) {
    rides.set("O", "ZD", Date(2018, 1, 2), p, 30, 25, 40);
    rides.set("ZA", "D", Date(2018, 1, 3), p, 25, 20, 35);
  }
  // 21:45 to 23:05, plus 45 + 25 minutes: door arrival 00:15.
  auto seg = build::segment("S", "M", w.dep, w.arr, build::local(w.dep->tz, 2018, 1, 2, 21, 45),
                            build::local(w.dep->tz, 2018, 1, 2, 23, 5));
  rides.set("ZA", "D", Date(2018, 1, 2), DayPeriod::LateEvening, 25, 20, 35);
  const auto t = compute_trip(seg, w.origin, w.dest, w.dep->dwell, w.arr->dwell, rides);
  EXPECT_EQ(t.arrival_date, Date(2018, 1, 3));
  EXPECT_EQ(t.arrival_period, DayPeriod::EarlyMorning);
}

TEST(Trip, MissingRideIsNotComputable) {
  WorkedTrip w;
  w.rides.rows.clear();
  EXPECT_THROW(w.run(0, 0), TripNotComputable);
}

TEST(Trip, FallbackFlagsComeFromLookup) {
  WorkedTrip w;
  w.rides.fallback = true;
  const auto t = w.run(0, 0);
  EXPECT_TRUE(t.used_daily_fallback_to);
  EXPECT_TRUE(t.used_daily_fallback_from);
}

TEST(Trip, Preconditions) {
  WorkedTrip w;
  auto seg = build::segment("S", "M", w.dep, w.arr, build::local(w.dep->tz, 2018, 1, 2, 12, 0),
                            build::local(w.dep->tz, 2018, 1, 2, 13, 0));
  seg.cancelled = true;
  EXPECT_THROW(compute_trip(seg, w.origin, w.dest, w.dep->dwell, w.arr->dwell, w.rides),
               std::invalid_argument);
  seg.cancelled = false;
  seg.actual_arr = seg.actual_dep;
  EXPECT_THROW(compute_trip(seg, w.origin, w.dest, w.dep->dwell, w.arr->dwell, w.rides),
               std::invalid_argument);
  seg.actual_dep.reset();
  seg.actual_arr.reset();
  EXPECT_THROW(compute_trip(seg, w.origin, w.dest, w.dep->dwell, w.arr->dwell, w.rides),
               std::invalid_argument);
  TripOptions on_time;
  on_time.on_time_mode = true;
  EXPECT_EQ(
      compute_trip(seg, w.origin, w.dest, w.dep->dwell, w.arr->dwell, w.rides, on_time).total(),
      minutes(30 + 90 + 60 + 45 + 25));
}

TEST(Trip, PhaseSumAndVariantOrdering) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(1, 60), hour(0, 23), delay(-10, 40);
  for (int i = 0; i < 300; ++i) {
    WorkedTrip w;
    w.rides.rows.clear();
    for (int day = 1; day <= 4; ++day)
      for (DayPeriod p : kDayPeriods) {
        int a = len(rng), b = len(rng);
        w.rides.set("O", "ZD", Date(2018, 1, day), p, a, a - 1 < 0 ? 0 : a - 1, a + len(rng));
        w.rides.set("ZA", "D", Date(2018, 1, day), p, b, 0, b + len(rng));
      }
    const int d = delay(rng);
    auto seg = build::segment("S", "M", w.dep, w.arr,
                              build::local(w.dep->tz, 2018, 1, 2, hour(rng), 0),
                              build::local(w.dep->tz, 2018, 1, 2, 23, 59), d, 0);
    const auto t = compute_trip(seg, w.origin, w.dest, w.dep->dwell, w.arr->dwell, w.rides);
    const auto& p = t.phases;
    EXPECT_EQ(t.total(), p.t_to + p.t_dep + p.t_in + p.t_arr + p.t_from);
    EXPECT_EQ(p.t_dep, w.dep->dwell.t_sec_departure + std::max(Seconds(0), minutes(d)));
    EXPECT_LE(t.total_min_variant(), t.total());
    EXPECT_LE(t.total(), t.total_max_variant());
  }
}
