#pragma once

#include <cstddef>
#include <span>

namespace darl::regression {

/// One observation: pipe length in meters against temperature in °C.
struct SamplePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Ordinary least-squares line y = alpha + beta * x.
struct LinearFit {
  double alpha = 0.0;      ///< intercept, °C
  double beta = 0.0;       ///< slope, °C/m
  double r_squared = 0.0;  ///< 1 - SSE/SST, in [0, 1]
  std::size_t n = 0;
};

/// Two-pass (mean-centered) OLS accumulated in long double.
///
/// Throws InsufficientSamples for n < 2, InvalidBounds for a negative or
/// non-finite abscissa, DegenerateAbscissa when every x is equal and
/// DegenerateVariance when every y is equal (R² undefined).
LinearFit fit_ols(std::span<const SamplePoint> points);

/// Same fit over parallel arrays; throws ShapeMismatch if sizes differ.
LinearFit fit_ols(std::span<const double> x, std::span<const double> y);

/// alpha + beta * x, no clamping.
constexpr double predict_at(const LinearFit& fit, double x) noexcept {
  return fit.alpha + fit.beta * x;
}

}  // namespace darl::regression
