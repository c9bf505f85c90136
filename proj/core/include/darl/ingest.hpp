#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "darl/model.hpp"

namespace darl::ingest {

/// Sensor columns, in file order after `timestamp_s`.
inline constexpr std::array<std::string_view, 7> kChannelNames{"T_in", "S1", "S2", "S3",
                                                               "S4",   "S7", "T_w"};
inline constexpr double kSensorUncertainty = 0.05;  // °C, Pt-100 tolerance

struct SensorLog {
  std::vector<double> timestamps;  ///< seconds, strictly increasing
  std::map<std::string, std::vector<double>, std::less<>> channels;
  double sensor_uncertainty = kSensorUncertainty;

  std::size_t rows() const noexcept { return timestamps.size(); }
};

/// Parses a comma-separated sensor log with header
/// `timestamp_s,T_in,S1,S2,S3,S4,S7,T_w` (channel columns in any order).
///
/// SchemaError: first column is not timestamp_s, a channel is missing,
/// duplicated or unknown. ParseError: wrong field count or an unparseable
/// number (message carries the 1-based data row). OrderingError:
/// timestamps not strictly increasing.
SensorLog parse_sensor_csv(std::string_view text);

struct ChannelSummary {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation (n - 1); 0 when count == 1
  std::size_t count = 0;
};

/// Throws SchemaError for an unknown channel, InsufficientSamples when empty.
ChannelSummary summarize_channel(const SensorLog& log, std::string_view channel);

/// Parses the flat JSON config. Required keys: t_in_c, t_end_c, t_w_c,
/// total_length_m, target_lengths_m, seeds. Optional: t_w_uncertainty_c (0),
/// n_override, sort_order ("descending"), darl_mode ("as-printed").
/// Unknown keys and malformed JSON are ParseError; values that break the
/// config invariants are ValidationError.
model::ExperimentConfig load_config(std::string_view json_text);

/// Inverse of load_config.
std::string serialize_config(const model::ExperimentConfig& config);

/// A measured reference point plus the published comparison it came from.
struct ReferenceObservation {
  double length = 0.0;                          ///< m
  double t_obs = 0.0;                           ///< °C (back-computed)
  double published_delta_t = 0.0;               ///< °C
  double published_relative_error_pct = 0.0;    ///< %
  prng::SeedValue published_seed;
};

struct ExperimentFixture {
  std::string name;
  model::ExperimentConfig config;
  std::vector<ReferenceObservation> reference;
  double published_rmse = 0.0;  ///< °C

  std::vector<model::ReferencePoint> reference_points() const;
};

std::vector<std::string> builtin_fixture_names();

/// "experiment-a" or "experiment-b"; throws UnknownFixture otherwise.
ExperimentFixture builtin_fixture(std::string_view name);

/// Reads the fixture file format stored under fixtures/v1.
ExperimentFixture load_fixture(std::string_view json_text);
std::string serialize_fixture(const ExperimentFixture& fixture);

/// Two-column CSV `length_m,t_obs_c` with header.
std::vector<model::ReferencePoint> parse_reference_csv(std::string_view text);

/// Single-column series CSV. Accepts an optional non-numeric header line
/// (e.g. `Ordered_Value`, quoted or not); every other line must be a number.
std::vector<double> parse_series_csv(std::string_view text);

}  // namespace darl::ingest
