#include "darl/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "darl/error.hpp"

namespace darl::regression {

LinearFit fit_ols(std::span<const SamplePoint> points) {
  const std::size_t n = points.size();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientSamples,
                "least squares needs at least 2 points, got " + std::to_string(n));
  }

  long double sum_x = 0.0L;
  long double sum_y = 0.0L;
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0) {
      throw Error(ErrorCode::InvalidBounds, "sample points need finite x >= 0 and finite y");
    }
    sum_x += p.x;
    sum_y += p.y;
  }
  const long double count = static_cast<long double>(n);
  const long double mean_x = sum_x / count;
  const long double mean_y = sum_y / count;

  long double sxx = 0.0L;
  long double sxy = 0.0L;
  long double syy = 0.0L;
  for (const auto& p : points) {
    const long double dx = p.x - mean_x;
    const long double dy = p.y - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  const auto [min_x, max_x] = std::minmax_element(
      points.begin(), points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  if (min_x->x == max_x->x || sxx == 0.0L) {
    throw Error(ErrorCode::DegenerateAbscissa, "all x values are equal");
  }
  const auto [min_y, max_y] = std::minmax_element(
      points.begin(), points.end(), [](const auto& a, const auto& b) { return a.y < b.y; });
  if (min_y->y == max_y->y || syy == 0.0L) {
    throw Error(ErrorCode::DegenerateVariance, "all y values are equal; R² is undefined");
  }

  const long double beta = sxy / sxx;
  const long double alpha = mean_y - beta * mean_x;

  long double sse = 0.0L;
  for (const auto& p : points) {
    const long double r = p.y - (alpha + beta * p.x);
    sse += r * r;
  }
  const long double r_squared = std::clamp(1.0L - sse / syy, 0.0L, 1.0L);

  return LinearFit{static_cast<double>(alpha), static_cast<double>(beta),
                   static_cast<double>(r_squared), n};
}

LinearFit fit_ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::ShapeMismatch, "x and y must have the same length");
  }
  std::vector<SamplePoint> points(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) points[i] = {x[i], y[i]};
  return fit_ols(points);
}

}  // namespace darl::regression
