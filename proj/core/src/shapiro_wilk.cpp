// Port of Royston's AS R94 (Appl. Statist. 1995, 44(4)) swilk routine.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "darl/error.hpp"
#include "darl/stats.hpp"

namespace darl::stats {

namespace {

constexpr double kSmall = 1e-19;

// Polynomial approximations for the first two weights.
constexpr double kC1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr double kC2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
// Mean and log-sd of the normalizing transform, n <= 11 and n >= 12.
constexpr double kGamma[] = {-2.273, 0.459};
constexpr double kC3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[] = {-0.4803, -0.082676, 0.0030302};

template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double result = c[N - 1];
  for (std::size_t i = N - 1; i > 0; --i) result = result * x + c[i - 1];
  return result;
}

// Half-set of normalized weights a[0..n/2-1] for the lower order statistics,
// sign convention as in AS R94 (a[0] is the weight of the extreme pair).
std::vector<double> swilk_weights(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }

  const boost::math::normal standard;
  const double an = static_cast<double>(n);
  const double an25 = an + 0.25;
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    a[i] = boost::math::quantile(standard, (static_cast<double>(i + 1) - 0.375) / an25);
    summ2 += a[i] * a[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(kC1, rsn) - a[0] / ssumm2;

  std::size_t first_scaled = 1;
  double fac = 0.0;
  if (n > 5) {
    first_scaled = 2;
    const double a2 = -a[1] / ssumm2 + poly(kC2, rsn);
    fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first_scaled; i < half; ++i) a[i] /= -fac;
  return a;
}

}  // namespace

NormalityResult shapiro_wilk(std::span<const double> values, double alpha) {
  const std::size_t n = values.size();
  if (n < 3 || n > 5000) {
    throw Error(ErrorCode::UnsupportedSampleSize,
                "Shapiro-Wilk needs 3 <= n <= 5000, got " + std::to_string(n));
  }

  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  // Location shift for conditioning; W is location invariant.
  const double center = x[n / 2];
  for (auto& v : x) v -= center;

  const double range = x[n - 1] - x[0];
  if (!(range >= kSmall)) {
    throw Error(ErrorCode::DegenerateVariance, "Shapiro-Wilk sample has zero range");
  }

  const std::vector<double> a = swilk_weights(n);
  // Full antisymmetric coefficient vector over the sorted sample.
  auto coefficient = [&](std::size_t i) {
    const std::size_t j = n - 1 - i;
    if (i == j) return 0.0;
    return i < j ? -a[i] : a[j];
  };

  double sa = 0.0;
  double sx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += coefficient(i);
    sx += x[i] / range;
  }
  sa /= static_cast<double>(n);
  sx /= static_cast<double>(n);

  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double asa = coefficient(i) - sa;
    const double xsx = x[i] / range - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }

  // w1 = 1 - W, computed directly to keep precision when W is near 1.
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  NormalityResult result{w, 1.0, n, alpha};

  if (n == 3) {
    constexpr double six_over_pi = 6.0 / std::numbers::pi;
    constexpr double pi_over_3 = std::numbers::pi / 3.0;
    result.p_value = std::max(0.0, six_over_pi * (std::asin(std::sqrt(w)) - pi_over_3));
    return result;
  }

  const double an = static_cast<double>(n);
  double y = std::log(w1);
  double mean = 0.0;
  double sd = 0.0;
  if (n <= 11) {
    const double gamma = poly(kGamma, an);
    if (y >= gamma) {
      result.p_value = 1e-99;
      return result;
    }
    y = -std::log(gamma - y);
    mean = poly(kC3, an);
    sd = std::exp(poly(kC4, an));
  } else {
    const double log_n = std::log(an);
    mean = poly(kC5, log_n);
    sd = std::exp(poly(kC6, log_n));
  }
  result.p_value = boost::math::cdf(boost::math::complement(boost::math::normal(mean, sd), y));
  return result;
}

}  // namespace darl::stats
