#pragma once

#include <cstddef>
#include <span>

namespace darl::stats {

inline constexpr double kDefaultAlpha = 0.05;

struct NormalityResult {
  double w_statistic = 1.0;
  double p_value = 1.0;
  std::size_t n = 0;
  double alpha = kDefaultAlpha;

  bool rejects_normality() const noexcept { return p_value < alpha; }
};

/// Shapiro-Wilk W test using Royston's 1995 approximation (AS R94):
/// polynomial approximations for the weights and for the moments of
/// log(1 - W), with the exact p-value at n = 3.
///
/// Input need not be sorted. Throws UnsupportedSampleSize outside
/// 3 <= n <= 5000 and DegenerateVariance when the sample has zero range.
NormalityResult shapiro_wilk(std::span<const double> values, double alpha = kDefaultAlpha);

/// sqrt(mean((observed - simulated)^2)).
/// Throws ShapeMismatch on unequal lengths and InsufficientSamples when empty.
double rmse(std::span<const double> observed, std::span<const double> simulated);

/// 100 * |observed - simulated| / |observed|, in percent.
/// The observed (measured) value is the denominator. Throws DivisionByZero
/// when observed == 0.
double relative_error(double observed, double simulated);

struct QuartileSummary {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
};

/// Linear-interpolation ("type 7") quantile of an ascending-sorted sample.
/// p must lie in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

/// Type 7 quartiles of an unsorted sample. Throws InsufficientSamples when empty.
QuartileSummary quartile_summary(std::span<const double> values);

}  // namespace darl::stats
