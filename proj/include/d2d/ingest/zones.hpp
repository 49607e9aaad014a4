#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "d2d/core/types.hpp"
#include "d2d/error.hpp"
#include "d2d/ingest/ride_stats.hpp"

namespace d2d {

/// Zones of a dataset plus their original GeoJSON geometry, kept for export.
class ZoneSet {
public:
  ZoneSet() = default;

  void add(Zone z, nlohmann::json geometry = nullptr) {
    if (z.zone_id.empty()) throw InputError("empty zone_id");
    if (pos_.count(z.zone_id)) throw InputError("duplicate zone_id '" + z.zone_id + "'");
    pos_.emplace(z.zone_id, zones_.size());
    zones_.push_back(std::move(z));
    geometry_.push_back(std::move(geometry));
  }

  const Zone* find(std::string_view id) const {
    auto it = pos_.find(id);
    return it == pos_.end() ? nullptr : &zones_[it->second];
  }

  const nlohmann::json& geometry(std::string_view id) const {
    static const nlohmann::json null_geometry = nullptr;
    auto it = pos_.find(id);
    return it == pos_.end() ? null_geometry : geometry_[it->second];
  }

  /// Zones in file order.
  const std::vector<Zone>& zones() const noexcept { return zones_; }
  std::size_t size() const noexcept { return zones_.size(); }

private:
  std::vector<Zone> zones_;
  std::vector<nlohmann::json> geometry_;
  std::map<std::string, std::size_t, std::less<>> pos_;
};

/// Parses a FeatureCollection. Each feature needs properties.zone_id;
/// properties.internal_point ([lon, lat]) and population_density are optional.
inline ZoneSet read_zones(std::istream& in, const std::string& source,
                          LoadReport* report = nullptr) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array())
    throw InputError(source + ": not a GeoJSON FeatureCollection");

  ZoneSet out;
  std::size_t i = 0;
  for (const auto& feat : doc["features"]) {
    const std::string where = source + ": feature " + std::to_string(i++);
    if (!feat.is_object() || !feat.contains("properties") || !feat["properties"].is_object())
      throw InputError(where + ": missing properties");
    const auto& props = feat["properties"];
    if (!props.contains("zone_id") || !props["zone_id"].is_string())
      throw InputError(where + ": zone_id must be a string");
    Zone z;
    z.zone_id = props["zone_id"].get<std::string>();
    if (props.contains("internal_point") && !props["internal_point"].is_null()) {
      const auto& p = props["internal_point"];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw InputError(where + ": internal_point must be [lon, lat]");
      GeoPoint g{p[1].get<double>(), p[0].get<double>()};
      if (!valid_coordinates(g)) throw InputError(where + ": internal_point out of range");
      z.internal_point = g;
    }
    if (props.contains("population_density") && !props["population_density"].is_null()) {
      const auto& d = props["population_density"];
      if (!d.is_number()) throw InputError(where + ": population_density must be a number");
      const double v = d.get<double>();
      if (!(v >= 0.0)) throw InputError(where + ": population_density must be non-negative");
      z.population_density = v;
    }
    try {
      out.add(std::move(z), feat.value("geometry", nlohmann::json(nullptr)));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (report) *report = {out.size(), 0};
  return out;
}

inline ZoneSet load_zones(const std::string& path, LoadReport* report = nullptr) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_zones(in, path, report);
}

inline nlohmann::json zones_to_json(const ZoneSet& zones) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& z : zones.zones()) {
    nlohmann::json props = {{"zone_id", z.zone_id}};
    if (z.internal_point) props["internal_point"] = {z.internal_point->lon, z.internal_point->lat};
    if (z.population_density) props["population_density"] = *z.population_density;
    features.push_back({{"type", "Feature"},
                        {"geometry", zones.geometry(z.zone_id)},
                        {"properties", std::move(props)}});
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

/// Canonical form: two-space indented JSON with sorted keys, trailing newline.
inline void write_zones(std::ostream& out, const ZoneSet& zones) {
  out << zones_to_json(zones).dump(2) << '\n';
}

} // namespace d2d
