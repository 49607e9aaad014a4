#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "d2d/error.hpp"

namespace d2d {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Simple ordinary least squares y = slope * x + intercept, computed on
/// centred data.
inline LinearFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("ols_fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw FitUndefined("ols_fit: fewer than two samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw FitUndefined("ols_fit: all predictor values are equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

} // namespace d2d
