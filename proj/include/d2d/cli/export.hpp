#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "d2d/aggregate/zone_summary.hpp"
#include "d2d/error.hpp"
#include "d2d/ingest/zones.hpp"

namespace d2d::cli {

using nlohmann::json;

inline std::string fixed(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

/// Rounds to 1e-6 so GeoJSON numbers stay short and stable.
inline double rounded(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

class OutputDir {
public:
  explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {}

  void write(const std::string& name, const std::string& content) const {
    const auto path = root_ / name;
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << content;
  }

  void write_json(const std::string& name, const json& doc) const {
    write(name, doc.dump(2) + "\n");
  }

  OutputDir sub(const std::string& name) const { return OutputDir(root_ / name); }
  const std::filesystem::path& root() const { return root_; }

private:
  std::filesystem::path root_;
};

/// FeatureCollection over every input zone, in input order. `props` returns
/// the properties of reached zones; the others carry `reached: false`.
inline json zone_layer(const ZoneSet& zones,
                       const std::function<std::optional<json>(const Zone&)>& props) {
  json features = json::array();
  for (const auto& z : zones.zones()) {
    json p = json::object();
    if (auto extra = props(z)) {
      p = std::move(*extra);
      p["reached"] = true;
    } else {
      p["reached"] = false;
    }
    p["zone_id"] = z.zone_id;
    features.push_back(
        {{"type", "Feature"}, {"geometry", zones.geometry(z.zone_id)}, {"properties", p}});
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

/// summaries of one period keyed by zone.
inline std::map<std::string, const ZonePeriodSummary*> by_zone(
    const std::vector<ZonePeriodSummary>& summaries, DayPeriod period) {
  std::map<std::string, const ZonePeriodSummary*> m;
  for (const auto& s : summaries)
    if (s.period == period) m[s.zone_id] = &s;
  return m;
}

inline json counts_json(const std::map<std::string, int>& counts) {
  json j = json::object();
  for (const auto& [m, n] : counts) j[m] = n;
  return j;
}

} // namespace d2d::cli
