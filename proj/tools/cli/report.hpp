#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "darl/ingest.hpp"
#include "darl/model.hpp"
#include "darl/stats.hpp"

namespace darl::cli {

inline constexpr const char* kToolName = "darl";
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything a run needs besides the config: observations to compare
/// against and, for built-in fixtures, the published comparison rows.
struct RunInput {
  std::string source;
  model::ExperimentConfig config;
  std::vector<model::ReferencePoint> reference;
  std::vector<ingest::ReferenceObservation> published;
  std::optional<double> published_rmse;
};

struct SeriesSummary {
  prng::SeedValue seed;
  std::size_t n = 0;
  regression::LinearFit fit;
  std::optional<stats::NormalityResult> normality;  ///< unset when n > 5000
  stats::QuartileSummary quartiles;
};

/// Spread of simulated temperatures across seeds at one target length.
struct TargetSpread {
  double length = 0.0;
  std::size_t count = 0;
  stats::QuartileSummary t_sim;
};

/// One published comparison row next to the value this build computes for
/// the same seed and length.
struct PublishedRow {
  double length = 0.0;
  prng::SeedValue seed;
  double t_obs = 0.0;
  double published_delta_t = 0.0;
  double published_relative_error_pct = 0.0;
  std::optional<double> t_sim;  ///< unset if the seed did not run or the variant is singular
  std::optional<double> delta_t;
  std::optional<double> relative_error_pct;
  bool out_of_range = false;
};

struct VariantSummary {
  std::string name;
  std::string formula;
  bool active = false;
  std::vector<PublishedRow> rows;
  std::optional<double> published_seed_rmse;  ///< RMSE over rows, each with its published seed
  std::size_t out_of_range_count = 0;
};

struct RunReport {
  RunInput input;
  model::RunResult run;
  std::vector<SeriesSummary> series;
  std::vector<TargetSpread> spreads;
  std::optional<model::Comparison> comparison;
  std::vector<model::SeedScore> ranking;
  std::vector<VariantSummary> variants;  ///< only when published rows exist
  double wall_time_ms = 0.0;             ///< not part of the JSON form
};

/// Runs the full pipeline. Errors from run_configuration and
/// compare_with_reference propagate.
RunReport build_run_report(RunInput input);

/// Deterministic JSON form: numbers rounded to 15 significant digits, no
/// wall time.
nlohmann::ordered_json to_json(const RunReport& report);

nlohmann::ordered_json ranking_json(const RunReport& report);

void print_run_table(const RunReport& report, std::ostream& out);
void print_ranking_table(const RunReport& report, std::ostream& out);

/// JSON number rounded to 15 significant digits; null when not finite.
nlohmann::ordered_json number_json(double value);

}  // namespace darl::cli
