#pragma once

#include "d2d/error.hpp"

#include "d2d/core/dwell.hpp"
#include "d2d/core/geodesic.hpp"
#include "d2d/core/period.hpp"
#include "d2d/core/rational.hpp"
#include "d2d/core/time.hpp"
#include "d2d/core/trip.hpp"
#include "d2d/core/types.hpp"

#include "d2d/ingest/ride_stats.hpp"
#include "d2d/ingest/schedule.hpp"
#include "d2d/ingest/segments.hpp"
#include "d2d/ingest/stations.hpp"
#include "d2d/ingest/zones.hpp"

#include "d2d/aggregate/bins.hpp"
#include "d2d/aggregate/day_stats.hpp"
#include "d2d/aggregate/pipeline.hpp"
#include "d2d/aggregate/summary.hpp"
#include "d2d/aggregate/zone_summary.hpp"

#include "d2d/analytics/delay.hpp"
#include "d2d/analytics/integration.hpp"
#include "d2d/analytics/legs.hpp"
#include "d2d/analytics/ols.hpp"
#include "d2d/analytics/weather.hpp"
