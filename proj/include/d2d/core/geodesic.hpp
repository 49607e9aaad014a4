#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "d2d/core/types.hpp"

namespace d2d {

/// Mean Earth radius (IUGG), km.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Great-circle distance in km by the haversine formula.
inline double geodesic_distance(const GeoPoint& a, const GeoPoint& b) {
  if (!valid_coordinates(a) || !valid_coordinates(b))
    throw std::invalid_argument("geodesic_distance: coordinates out of range");
  constexpr double rad = std::numbers::pi / 180.0;
  const double phi1 = a.lat * rad;
  const double phi2 = b.lat * rad;
  const double dphi = (b.lat - a.lat) * rad;
  const double dlambda = (b.lon - a.lon) * rad;
  const double s1 = std::sin(dphi / 2);
  const double s2 = std::sin(dlambda / 2);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

} // namespace d2d
