#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <absl/time/civil_time.h>

#include "d2d/error.hpp"

namespace d2d::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and "".
inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

/// Line-oriented reader that enforces an exact header and counts lines.
class Reader {
public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  void expect_header(std::string_view header) {
    std::string line;
    if (!read_line(line)) throw InputError(source_, line_, "empty file, expected header");
    if (line != header)
      throw InputError(source_, line_, "header mismatch: expected '" + std::string(header) + "'");
  }

  /// Next non-blank record, or false at end. Blank lines count as skipped.
  bool next(std::vector<std::string>& fields, std::size_t expected_fields) {
    std::string line;
    while (read_line(line)) {
      if (line.find_first_not_of(" \t") == std::string::npos) {
        ++skipped_;
        continue;
      }
      fields = split(line);
      if (fields.size() != expected_fields)
        fail("expected " + std::to_string(expected_fields) + " fields, got " +
             std::to_string(fields.size()));
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw InputError(source_, line_, what); }

  std::size_t line() const noexcept { return line_; }
  std::size_t skipped() const noexcept { return skipped_; }
  const std::string& source() const noexcept { return source_; }

private:
  bool read_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
  std::size_t skipped_ = 0;
};

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used != str.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::optional<absl::CivilDay> parse_date(std::string_view s) {
  absl::CivilDay d;
  if (s.size() != 10 || !absl::ParseCivilTime(std::string(s), &d)) return std::nullopt;
  return d;
}

/// "YYYY-MM-DDTHH:MM" or "YYYY-MM-DDTHH:MM:SS" (a space may replace 'T').
inline std::optional<absl::CivilSecond> parse_local_timestamp(std::string_view s) {
  std::string str(s);
  if (str.size() > 10 && str[10] == ' ') str[10] = 'T';
  absl::CivilSecond cs;
  if (str.size() == 19 && absl::ParseCivilTime(str, &cs)) return cs;
  absl::CivilMinute cm;
  if (str.size() == 16 && absl::ParseCivilTime(str, &cm)) return absl::CivilSecond(cm);
  return std::nullopt;
}

/// "HH:MM" into minutes after midnight.
inline std::optional<int> parse_clock(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') return std::nullopt;
  auto h = parse_int(s.substr(0, 2));
  auto m = parse_int(s.substr(3, 2));
  if (!h || !m || *h < 0 || *h > 23 || *m < 0 || *m > 59) return std::nullopt;
  return static_cast<int>(*h * 60 + *m);
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

} // namespace d2d::csv
