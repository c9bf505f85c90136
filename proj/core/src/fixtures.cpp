// Built-in experiment fixtures. Reference temperatures are not measured
// values shipped with the data set: each t_obs is the published ΔT divided
// by the published relative error fraction, rounded to 0.01 °C. See
// fixtures/v1/PROVENANCE.md.

#include <string>

#include "darl/error.hpp"
#include "darl/ingest.hpp"

namespace darl::ingest {

namespace {

using prng::SeedValue;

std::vector<SeedValue> all_fermat_seeds() {
  return {prng::kFermatSeeds.begin(), prng::kFermatSeeds.end()};
}

ExperimentFixture experiment_a() {
  ExperimentFixture fx;
  fx.name = "experiment-a";
  fx.config.t_in = 31.01;
  fx.config.t_end = 25.81;  // sensor S4
  fx.config.t_w = 24.28;
  fx.config.t_w_uncertainty = 0.09;
  fx.config.total_length = 5.40;
  fx.config.target_lengths = {2.50, 3.40, 4.40};
  fx.config.seeds = all_fermat_seeds();
  fx.reference = {
      {2.50, 28.80, 0.36, 1.25, SeedValue{5}},
      {3.40, 27.37, 0.49, 1.79, SeedValue{5}},
      {4.40, 26.67, 0.64, 2.40, SeedValue{5}},
  };
  fx.published_rmse = 0.5096;
  return fx;
}

ExperimentFixture experiment_b() {
  ExperimentFixture fx;
  fx.name = "experiment-b";
  fx.config.t_in = 31.01;
  fx.config.t_end = 24.54;  // sensor S7
  fx.config.t_w = 24.28;
  fx.config.t_w_uncertainty = 0.09;
  fx.config.total_length = 8.30;
  fx.config.target_lengths = {2.50, 3.40, 4.40, 5.40};
  fx.config.seeds = all_fermat_seeds();
  fx.reference = {
      {2.50, 28.66, 0.90, 3.14, SeedValue{17}},
      {3.40, 27.48, 1.19, 4.33, SeedValue{5}},
      {4.40, 26.58, 1.47, 5.53, SeedValue{5}},
      {5.40, 25.74, 1.57, 6.10, SeedValue{5}},
  };
  fx.published_rmse = 1.3088;
  return fx;
}

}  // namespace

std::vector<std::string> builtin_fixture_names() { return {"experiment-a", "experiment-b"}; }

ExperimentFixture builtin_fixture(std::string_view name) {
  if (name == "experiment-a") return experiment_a();
  if (name == "experiment-b") return experiment_b();
  throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace darl::ingest
