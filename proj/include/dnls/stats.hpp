#pragma once

#include <span>

namespace dnls {

struct LinearFit {
  double slope;
  double intercept;
  double slope_stderr;  // NaN with fewer than three points
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x).
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

}  // namespace dnls
