#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "darl/error.hpp"
#include "darl/prng.hpp"
#include "darl/stats.hpp"

namespace {

using darl::ErrorCode;
using namespace darl::stats;

nlohmann::json reference_cases() {
  std::ifstream in(DARL_TEST_DATA_DIR "/shapiro_wilk_reference.json");
  EXPECT_TRUE(in.good());
  return nlohmann::json::parse(in);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const darl::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::IoError;
}

// W and p from scipy.stats.shapiro (see tests/oracles/capture_shapiro_wilk.py).
TEST(ShapiroWilk, MatchesReferenceImplementation) {
  const auto cases = reference_cases();
  for (const auto& [name, c] : cases.items()) {
    const auto values = c["values"].get<std::vector<double>>();
    const auto r = shapiro_wilk(values);
    EXPECT_EQ(r.n, values.size());
    EXPECT_NEAR(r.w_statistic, c["w"].get<double>(), 1e-6) << name;
    const double p = c["p"].get<double>();
    EXPECT_NEAR(r.p_value, p, std::max(1e-6, 1e-4 * p)) << name;
  }
}

TEST(ShapiroWilk, TwentyPointFixtureWithinAcceptanceTolerance) {
  const auto c = reference_cases()["fixture20"];
  const auto r = shapiro_wilk(c["values"].get<std::vector<double>>());
  EXPECT_NEAR(r.w_statistic, c["w"].get<double>(), 1e-3);
  EXPECT_NEAR(r.p_value, c["p"].get<double>(), 1e-3);
  EXPECT_FALSE(r.rejects_normality());
}

TEST(ShapiroWilk, InputOrderDoesNotMatter) {
  auto values = reference_cases()["fixture20"]["values"].get<std::vector<double>>();
  const auto a = shapiro_wilk(values);
  std::reverse(values.begin(), values.end());
  const auto b = shapiro_wilk(values);
  EXPECT_DOUBLE_EQ(a.w_statistic, b.w_statistic);
  EXPECT_DOUBLE_EQ(a.p_value, b.p_value);
}

TEST(ShapiroWilk, SortedUniformSeriesIsRejected) {
  const auto s = darl::prng::uniform_series(darl::prng::SeedValue{5}, 538, 25.81, 31.01,
                                            darl::prng::SortOrder::Ascending);
  const auto r = shapiro_wilk(s.values);
  EXPECT_LT(r.p_value, 0.05);
  EXPECT_TRUE(r.rejects_normality());
}

TEST(ShapiroWilk, SampleSizeAndDegeneracyErrors) {
  EXPECT_EQ(code_of([] { shapiro_wilk(std::vector<double>{1.0, 2.0}); }),
            ErrorCode::UnsupportedSampleSize);
  EXPECT_EQ(code_of([] { shapiro_wilk(std::vector<double>(5001, 1.0)); }),
            ErrorCode::UnsupportedSampleSize);
  EXPECT_EQ(code_of([] { shapiro_wilk(std::vector<double>(20, 24.28)); }),
            ErrorCode::DegenerateVariance);
}

TEST(ShapiroWilk, ResultInvariants) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> sizes(3, 400);
  std::lognormal_distribution<double> skewed(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(sizes(rng)));
    for (auto& x : v) x = skewed(rng);
    const auto r = shapiro_wilk(v);
    ASSERT_GT(r.w_statistic, 0.0);
    ASSERT_LE(r.w_statistic, 1.0);
    ASSERT_GE(r.p_value, 0.0);
    ASSERT_LE(r.p_value, 1.0);
  }
}

// Irwin-Hall(12) - 6 is close enough to normal that the test keeps its
// nominal size at n = 1000.
TEST(ShapiroWilkProperty, PseudoNormalUsuallyAccepted) {
  auto state = darl::prng::seed_generator(darl::prng::SeedValue{17});
  int accepted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1000);
    for (auto& x : v) {
      double s = 0.0;
      for (int k = 0; k < 12; ++k) s += darl::prng::next_unit(state);
      x = s - 6.0;
    }
    accepted += shapiro_wilk(v).p_value >= 0.05 ? 1 : 0;
  }
  EXPECT_GE(accepted, 90);
}

TEST(ShapiroWilkProperty, UniformAlmostAlwaysRejected) {
  auto state = darl::prng::seed_generator(darl::prng::SeedValue{257});
  int rejected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(538);
    for (auto& x : v) x = 25.81 + 5.20 * darl::prng::next_unit(state);
    rejected += shapiro_wilk(v).p_value < 0.05 ? 1 : 0;
  }
  EXPECT_GE(rejected, 99);
}

TEST(Rmse, HandExamples) {
  const std::vector<double> a{1, 2, 3};
  EXPECT_EQ(rmse(a, a), 0.0);
  EXPECT_NEAR(rmse(a, std::vector<double>{1, 2, 5}), std::sqrt(4.0 / 3.0), 1e-12);
  EXPECT_NEAR(rmse(a, std::vector<double>{1, 2, 5}), 1.1547005, 1e-7);
}

TEST(Rmse, Errors) {
  EXPECT_EQ(code_of([] { rmse(std::vector<double>{1, 2}, std::vector<double>{1}); }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([] { rmse(std::vector<double>{}, std::vector<double>{}); }),
            ErrorCode::InsufficientSamples);
}

TEST(RmseProperty, SignSymmetryAndScaling) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(1 + trial % 17), r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = u(rng);
      r[i] = u(rng);
    }
    const double k = u(rng);
    std::vector<double> plus(a.size()), minus(a.size()), scaled(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      plus[i] = a[i] + r[i];
      minus[i] = a[i] - r[i];
      scaled[i] = a[i] + k * r[i];
    }
    EXPECT_EQ(rmse(a, a), 0.0);
    EXPECT_GE(rmse(a, plus), 0.0);
    EXPECT_NEAR(rmse(a, plus), rmse(a, minus), 1e-12);
    EXPECT_NEAR(rmse(a, plus), rmse(plus, a), 1e-12);
    EXPECT_NEAR(rmse(a, scaled), std::abs(k) * rmse(a, plus), 1e-12 * std::max(1.0, std::abs(k) * rmse(a, plus)));
  }
}

TEST(RelativeError, Examples) {
  EXPECT_EQ(relative_error(27.0, 27.0), 0.0);
  EXPECT_NEAR(relative_error(28.80, 28.80 + 0.36), 1.25, 1e-9);
  EXPECT_NEAR(relative_error(28.80, 28.80 - 0.36), 1.25, 1e-9);
  EXPECT_NEAR(relative_error(25.74, 25.74 + 1.57), 6.10, 0.01);
  EXPECT_NEAR(relative_error(-10.0, -12.0), 20.0, 1e-12);
  EXPECT_EQ(code_of([] { relative_error(0.0, 1.0); }), ErrorCode::DivisionByZero);
}

TEST(QuartileSummary, Examples) {
  auto q = quartile_summary(std::vector<double>{1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(q.q1, 2.0);
  EXPECT_DOUBLE_EQ(q.q2, 3.0);
  EXPECT_DOUBLE_EQ(q.q3, 4.0);
  EXPECT_DOUBLE_EQ(q.iqr, 2.0);

  // h = 3p: 0.75, 1.5, 2.25 on [1, 2, 3, 4]
  q = quartile_summary(std::vector<double>{4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(q.q1, 1.75);
  EXPECT_DOUBLE_EQ(q.q2, 2.5);
  EXPECT_DOUBLE_EQ(q.q3, 3.25);
  EXPECT_DOUBLE_EQ(q.iqr, 1.5);

  q = quartile_summary(std::vector<double>{7});
  EXPECT_EQ(q.q1, 7.0);
  EXPECT_EQ(q.q2, 7.0);
  EXPECT_EQ(q.q3, 7.0);
  EXPECT_EQ(q.iqr, 0.0);

  EXPECT_EQ(code_of([] { quartile_summary(std::vector<double>{}); }),
            ErrorCode::InsufficientSamples);
}

TEST(QuartileSummaryProperty, OrderedAndNonNegativeIqr) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> sizes(1, 60);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(sizes(rng)));
    for (auto& x : v) x = trial % 3 == 0 ? std::round(u(rng) / 100.0) : u(rng);
    const auto q = quartile_summary(v);
    ASSERT_LE(q.q1, q.q2);
    ASSERT_LE(q.q2, q.q3);
    ASSERT_GE(q.iqr, 0.0);
    ASSERT_EQ(q.iqr, q.q3 - q.q1);
  }
}

}  // namespace
