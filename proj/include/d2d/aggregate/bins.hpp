#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>

#include "d2d/core/period.hpp"
#include "d2d/core/rational.hpp"

namespace d2d {

/// Door-to-door time classes, half-open: [0,4h) [4h,4h30) [4h30,5h) [5h,inf).
enum class IntervalBin { Under4h, From4hTo4h30, From4h30To5h, Over5h };

inline constexpr std::array<IntervalBin, 4> kIntervalBins = {
    IntervalBin::Under4h, IntervalBin::From4hTo4h30, IntervalBin::From4h30To5h,
    IntervalBin::Over5h};

constexpr std::string_view bin_name(IntervalBin b) {
  switch (b) {
  case IntervalBin::Under4h: return "<4h";
  case IntervalBin::From4hTo4h30: return "4h-4h30";
  case IntervalBin::From4h30To5h: return "4h30-5h";
  case IntervalBin::Over5h: return ">=5h";
  }
  return "?";
}

inline IntervalBin interval_bin(const Rational& seconds) {
  if (seconds < Rational(240 * 60)) return IntervalBin::Under4h;
  if (seconds < Rational(270 * 60)) return IntervalBin::From4hTo4h30;
  if (seconds < Rational(300 * 60)) return IntervalBin::From4h30To5h;
  return IntervalBin::Over5h;
}

/// Zone counts keyed by (fastest mode, period, bin).
using BinTable = std::map<std::tuple<std::string, DayPeriod, IntervalBin>, int>;

} // namespace d2d
