#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "darl/error.hpp"
#include "darl/ingest.hpp"
#include "darl/number_format.hpp"
#include "darl/stats.hpp"

namespace {

using darl::ErrorCode;
using darl::prng::SeedValue;
using namespace darl::ingest;

template <class F>
darl::Error error_of(F&& f) {
  try {
    f();
  } catch (const darl::Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an error";
  return darl::Error(ErrorCode::IoError, "none");
}

template <class F>
ErrorCode code_of(F&& f) {
  return error_of(std::forward<F>(f)).code();
}

const char* kHeader = "timestamp_s,T_in,S1,S2,S3,S4,S7,T_w\n";

std::string sensor_row(double t, double t_w) {
  std::ostringstream row;
  row << std::setprecision(17) << t << ",31.01,30.2,29.1,28.4,27.0,25.81," << t_w << "\n";
  return row.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  EXPECT_TRUE(in.good()) << path;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(SensorCsv, SmallLog) {
  const std::string text = std::string(kHeader) + sensor_row(0, 24.2) + sensor_row(7, 24.3) +
                           sensor_row(14, 24.4);
  const auto log = parse_sensor_csv(text);
  EXPECT_EQ(log.rows(), 3u);
  EXPECT_EQ(log.channels.size(), kChannelNames.size());
  EXPECT_EQ(log.timestamps, (std::vector<double>{0, 7, 14}));
  EXPECT_EQ(log.channels.at("T_w"), (std::vector<double>{24.2, 24.3, 24.4}));
  EXPECT_EQ(log.sensor_uncertainty, 0.05);
}

TEST(SensorCsv, ColumnOrderCrlfAndTrailingBlankLines) {
  const auto log = parse_sensor_csv(
      "timestamp_s,T_w,S7,S4,S3,S2,S1,T_in\r\n0,24.28,1,2,3,4,5,6\r\n7,24.29,1,2,3,4,5,6\r\n\r\n");
  EXPECT_EQ(log.rows(), 2u);
  EXPECT_EQ(log.channels.at("T_w"), (std::vector<double>{24.28, 24.29}));
  EXPECT_EQ(log.channels.at("T_in"), (std::vector<double>{6, 6}));
}

TEST(SensorCsv, FiveHourLogAtSevenSeconds) {
  std::string text = kHeader;
  std::size_t expected = 0;
  for (int t = 0; t <= 300 * 60; t += 7, ++expected) text += sensor_row(t, 24.28);
  const auto log = parse_sensor_csv(text);
  EXPECT_EQ(expected, 2572u);
  EXPECT_EQ(log.rows(), 2572u);
  EXPECT_EQ(log.timestamps.back(), 17997.0);
}

TEST(SensorCsv, SchemaErrors) {
  EXPECT_EQ(code_of([] { parse_sensor_csv("timestamp_s,T_in,S1,S2,S3,S4,S7\n0,1,2,3,4,5,6\n"); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { parse_sensor_csv("T_in,timestamp_s,S1,S2,S3,S4,S7,T_w\n"); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { parse_sensor_csv("timestamp_s,T_in,S1,S2,S3,S4,S7,T_w,S9\n"); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { parse_sensor_csv("timestamp_s,T_in,S1,S1,S3,S4,S7,T_w\n"); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { parse_sensor_csv(""); }), ErrorCode::SchemaError);
}

TEST(SensorCsv, OrderingError) {
  const std::string text = std::string(kHeader) + sensor_row(7, 24.2) + sensor_row(7, 24.3);
  EXPECT_EQ(code_of([&] { parse_sensor_csv(text); }), ErrorCode::OrderingError);
}

TEST(SensorCsv, ParseErrorsNameTheRow) {
  const std::string bad_value =
      std::string(kHeader) + sensor_row(0, 24.2) + "7,31.01,30.2,x,28.4,27.0,25.81,24.3\n";
  const auto e = error_of([&] { parse_sensor_csv(bad_value); });
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();

  const std::string short_row = std::string(kHeader) + "0,31.01,30.2\n";
  const auto e2 = error_of([&] { parse_sensor_csv(short_row); });
  EXPECT_EQ(e2.code(), ErrorCode::ParseError);
  EXPECT_NE(std::string(e2.what()).find("row 1"), std::string::npos) << e2.what();
}

TEST(ChannelSummary, ConstantAndConstructed) {
  std::string text = kHeader;
  for (int i = 0; i < 10; ++i) text += sensor_row(i, 24.28);
  auto s = summarize_channel(parse_sensor_csv(text), "T_w");
  EXPECT_EQ(s.count, 10u);
  EXPECT_NEAR(s.mean, 24.28, 1e-12);
  EXPECT_NEAR(s.std, 0.0, 1e-12);

  // Alternating 24.28 +/- d has sample standard deviation d * sqrt(n / (n - 1)).
  const int n = 2572;
  const double d = 0.09 * std::sqrt((n - 1.0) / n);
  text = kHeader;
  for (int i = 0; i < n; ++i) text += sensor_row(7.0 * i, i % 2 == 0 ? 24.28 + d : 24.28 - d);
  s = summarize_channel(parse_sensor_csv(text), "T_w");
  EXPECT_EQ(s.count, static_cast<std::size_t>(n));
  EXPECT_NEAR(s.mean, 24.28, 1e-6);
  EXPECT_NEAR(s.std, 0.09, 1e-6);
}

TEST(ChannelSummary, Errors) {
  const auto empty = parse_sensor_csv(kHeader);
  EXPECT_EQ(empty.rows(), 0u);
  EXPECT_EQ(code_of([&] { summarize_channel(empty, "T_w"); }), ErrorCode::InsufficientSamples);
  const auto log = parse_sensor_csv(std::string(kHeader) + sensor_row(0, 24.0));
  EXPECT_EQ(code_of([&] { summarize_channel(log, "S5"); }), ErrorCode::SchemaError);
  EXPECT_EQ(summarize_channel(log, "S7").std, 0.0);
}

const char* kConfigA = R"({
  "t_in_c": 31.01, "t_end_c": 25.81, "t_w_c": 24.28, "t_w_uncertainty_c": 0.09,
  "total_length_m": 5.40, "target_lengths_m": [2.5, 3.4, 4.4],
  "seeds": [3, 5, 17, 257, 65537]
})";

TEST(LoadConfig, ExperimentA) {
  const auto c = load_config(kConfigA);
  EXPECT_EQ(c.t_in, 31.01);
  EXPECT_EQ(c.t_end, 25.81);
  EXPECT_EQ(c.t_w, 24.28);
  EXPECT_EQ(c.t_w_uncertainty, 0.09);
  EXPECT_EQ(c.total_length, 5.40);
  EXPECT_EQ(c.target_lengths, (std::vector<double>{2.5, 3.4, 4.4}));
  EXPECT_EQ(c.seeds.size(), 5u);
  EXPECT_FALSE(c.n_override);
  EXPECT_EQ(c.sort_order, darl::prng::SortOrder::Descending);
  EXPECT_EQ(c.darl_mode, "as-printed");
  EXPECT_EQ(c, builtin_fixture("experiment-a").config);
}

TEST(LoadConfig, OptionalKeys) {
  const auto c = load_config(R"({"t_in_c": 31.01, "t_end_c": 25.81, "t_w_c": 24.28,
    "total_length_m": 5.40, "target_lengths_m": [2.5], "seeds": [5], "n_override": 538,
    "sort_order": "asc", "darl_mode": "phi-r2-bracket"})");
  EXPECT_EQ(c.n_override, 538u);
  EXPECT_EQ(c.t_w_uncertainty, 0.0);
  EXPECT_EQ(c.sort_order, darl::prng::SortOrder::Ascending);
  EXPECT_EQ(c.darl_mode, "phi-r2-bracket");
}

TEST(LoadConfig, Errors) {
  EXPECT_EQ(code_of([] {
              load_config(R"({"t_in_c": 25.81, "t_end_c": 25.81, "t_w_c": 24.28,
                "total_length_m": 5.40, "target_lengths_m": [2.5], "seeds": [5]})");
            }),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of([] {
              load_config(R"({"t_in_c": 31.01, "t_end_c": 24.54, "t_w_c": 24.28,
                "total_length_m": 8.30, "target_lengths_m": [9.0], "seeds": [5]})");
            }),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of([] { load_config("{\"t_in_c\": 31.01,"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_config(R"({"t_in_c": 31.01})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_config(R"({"t_in_c": "hot", "t_end_c": 25.81, "t_w_c": 24.28,
                "total_length_m": 5.40, "target_lengths_m": [2.5], "seeds": [5]})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_config(R"({"t_in_c": 31.01, "t_end_c": 25.81, "t_w_c": 24.28,
                "total_length_m": 5.40, "target_lengths_m": [2.5], "seeds": [5], "extra": 1})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_config("[1, 2]"); }), ErrorCode::ParseError);
}

TEST(LoadConfigProperty, RoundTrip) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> temp(10.0, 40.0), spread(0.1, 10.0), unit(0.0, 1.0);
  const auto& fermat = darl::prng::kFermatSeeds;
  for (int trial = 0; trial < 200; ++trial) {
    darl::model::ExperimentConfig c;
    c.t_end = temp(rng);
    c.t_in = c.t_end + spread(rng);
    c.t_w = temp(rng);
    c.t_w_uncertainty = unit(rng);
    c.total_length = spread(rng);
    const int targets = 1 + trial % 5;
    for (int k = 0; k < targets; ++k) {
      c.target_lengths.push_back(c.total_length * (0.01 + 0.98 * unit(rng)));
    }
    for (std::size_t k = 0; k < fermat.size(); ++k) {
      if ((trial >> k) & 1) c.seeds.push_back(fermat[k]);
    }
    if (c.seeds.empty()) c.seeds.push_back(fermat[trial % fermat.size()]);
    if (trial % 3 == 0) c.n_override = 2 + static_cast<std::size_t>(trial);
    c.sort_order = trial % 2 ? darl::prng::SortOrder::Ascending : darl::prng::SortOrder::Descending;
    c.darl_mode = std::string(darl::model::darl_variants()[trial % 2].name);
    ASSERT_EQ(load_config(serialize_config(c)), c) << serialize_config(c);
  }
}

void expect_same_fixture(const ExperimentFixture& a, const ExperimentFixture& b) {
  EXPECT_EQ(a.name, b.name);
  EXPECT_EQ(a.config, b.config);
  EXPECT_EQ(a.published_rmse, b.published_rmse);
  ASSERT_EQ(a.reference.size(), b.reference.size());
  for (std::size_t i = 0; i < a.reference.size(); ++i) {
    EXPECT_EQ(a.reference[i].length, b.reference[i].length);
    EXPECT_EQ(a.reference[i].t_obs, b.reference[i].t_obs);
    EXPECT_EQ(a.reference[i].published_delta_t, b.reference[i].published_delta_t);
    EXPECT_EQ(a.reference[i].published_relative_error_pct,
              b.reference[i].published_relative_error_pct);
    EXPECT_EQ(a.reference[i].published_seed, b.reference[i].published_seed);
  }
}

TEST(Fixtures, BuiltIns) {
  EXPECT_EQ(builtin_fixture_names(), (std::vector<std::string>{"experiment-a", "experiment-b"}));
  const auto a = builtin_fixture("experiment-a");
  EXPECT_EQ(a.reference.size(), 3u);
  EXPECT_EQ(a.config.target_lengths.size(), 3u);
  EXPECT_EQ(a.published_rmse, 0.5096);
  const auto b = builtin_fixture("experiment-b");
  EXPECT_EQ(b.reference.size(), 4u);
  EXPECT_EQ(b.config.total_length, 8.30);
  EXPECT_EQ(b.config.t_end, 24.54);
  EXPECT_EQ(b.reference[0].published_seed, SeedValue{17});
  EXPECT_EQ(b.published_rmse, 1.3088);
  EXPECT_EQ(code_of([] { builtin_fixture("experiment-c"); }), ErrorCode::UnknownFixture);
}

TEST(Fixtures, FilesMatchBuiltIns) {
  for (const auto& name : builtin_fixture_names()) {
    const auto text = read_file(std::string(DARL_FIXTURE_DIR) + "/" + name + ".json");
    expect_same_fixture(load_fixture(text), builtin_fixture(name));
    expect_same_fixture(load_fixture(serialize_fixture(builtin_fixture(name))),
                        builtin_fixture(name));
  }
}

TEST(Fixtures, ReferenceIsSelfConsistent) {
  for (const auto& name : builtin_fixture_names()) {
    const auto f = builtin_fixture(name);
    for (const auto& o : f.reference) {
      const double pct = o.published_delta_t / o.t_obs * 100.0;
      EXPECT_NEAR(pct, o.published_relative_error_pct, 0.01) << name << " @ " << o.length;
      EXPECT_NEAR(darl::stats::relative_error(o.t_obs, o.t_obs + o.published_delta_t),
                  o.published_relative_error_pct, 0.01);
    }
    const auto points = f.reference_points();
    ASSERT_EQ(points.size(), f.reference.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      EXPECT_EQ(points[i].length, f.config.target_lengths[i]);
    }
  }
}

TEST(ReferenceCsv, ParsesAndRejectsBadHeader) {
  const auto pts = parse_reference_csv("length_m,t_obs_c\n2.5,28.80\n3.4,27.37\n");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[1].length, 3.4);
  EXPECT_EQ(pts[1].t_obs, 27.37);
  EXPECT_EQ(code_of([] { parse_reference_csv("x,y\n1,2\n"); }), ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { parse_reference_csv("length_m,t_obs_c\n2.5\n"); }),
            ErrorCode::ParseError);
}

TEST(SeriesCsv, HeaderVariants) {
  EXPECT_EQ(parse_series_csv("Ordered_Value\n1.5\n2.5\n"), (std::vector<double>{1.5, 2.5}));
  EXPECT_EQ(parse_series_csv("\"Ordered_Value\"\r\n1.5\r\n2.5\r\n"),
            (std::vector<double>{1.5, 2.5}));
  EXPECT_EQ(parse_series_csv("1.5\n2.5\n\n"), (std::vector<double>{1.5, 2.5}));
  EXPECT_EQ(code_of([] { parse_series_csv("Ordered_Value\n1.5\nabc\n"); }),
            ErrorCode::ParseError);
}

TEST(NumberFormat, RoundsToFifteenSignificantDigits) {
  EXPECT_EQ(darl::format_number(0.0), "0");
  EXPECT_EQ(darl::format_number(28.8), "28.8");
  EXPECT_EQ(darl::format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(darl::round_significant(0.1 + 0.2), 0.3);
  EXPECT_EQ(darl::round_significant(1.0 / 3.0), 0.333333333333333);
}

}  // namespace
