#include <algorithm>
#include <cmath>
#include <vector>

#include "darl/error.hpp"
#include "darl/stats.hpp"

namespace darl::stats {

double rmse(std::span<const double> observed, std::span<const double> simulated) {
  if (observed.size() != simulated.size()) {
    throw Error(ErrorCode::ShapeMismatch, "observed and simulated lengths differ");
  }
  if (observed.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "RMSE of an empty sample");
  }
  long double sum = 0.0L;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const long double d = static_cast<long double>(observed[i]) - simulated[i];
    sum += d * d;
  }
  return static_cast<double>(std::sqrt(sum / static_cast<long double>(observed.size())));
}

double relative_error(double observed, double simulated) {
  if (observed == 0.0) {
    throw Error(ErrorCode::DivisionByZero, "relative error with observed value 0");
  }
  return 100.0 * std::abs(observed - simulated) / std::abs(observed);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "quantile of an empty sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidBounds, "quantile probability outside [0, 1]");
  }
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return std::clamp(sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]), sorted[lo], sorted[lo + 1]);
}

QuartileSummary quartile_summary(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "quartiles of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  QuartileSummary q;
  q.q1 = quantile_sorted(sorted, 0.25);
  q.q2 = quantile_sorted(sorted, 0.50);
  q.q3 = quantile_sorted(sorted, 0.75);
  q.iqr = q.q3 - q.q1;
  return q;
}

}  // namespace darl::stats
