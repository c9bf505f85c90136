#pragma once

// The DARL predictor: a sorted uniform series laid over the pipe-length
// grid, an OLS line through it, and a closed-form correction that combines
// the fitted temperature with the boundary and groundwater temperatures.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darl/prng.hpp"
#include "darl/regression.hpp"

namespace darl::model {

inline constexpr std::string_view kAsPrinted = "as-printed";

struct ExperimentConfig {
  double t_in = 0.0;             ///< inlet air temperature, the series maximum (°C)
  double t_end = 0.0;            ///< terminal sensor temperature, the series minimum (°C)
  double t_w = 0.0;              ///< groundwater temperature (°C)
  double t_w_uncertainty = 0.0;  ///< reported spread of t_w (°C)
  double total_length = 0.0;     ///< m
  std::vector<double> target_lengths;  ///< m, each in (0, total_length)
  std::vector<prng::SeedValue> seeds;
  std::optional<std::size_t> n_override;
  prng::SortOrder sort_order = prng::SortOrder::Descending;
  std::string darl_mode = std::string(kAsPrinted);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ValidationError unless t_in > t_end, total_length > 0, every
/// target lies in (0, total_length), seeds is a nonempty duplicate-free
/// subset of the Fermat primes, n_override (if set) is >= 2, and darl_mode
/// names a registered variant.
void validate(const ExperimentConfig& config);

/// Number of series points: n_override, else round(100 * total_length).
std::size_t series_length(const ExperimentConfig& config);

struct SeriesOnGrid {
  std::vector<double> grid;  ///< x_i = i * total_length / (n - 1)
  prng::UniformSeries series;
};

/// Uniform series on [t_end, t_in] paired index-wise with the length grid.
/// Does not call validate(); errors from uniform_series propagate.
SeriesOnGrid build_series(const ExperimentConfig& config, prng::SeedValue seed);

// --- closed-form predictor ------------------------------------------------

struct DarlInputs {
  double t_max = 0.0;
  double t_min = 0.0;
  double t_w = 0.0;
  double t_phi = 0.0;
  double r_squared = 0.0;
};

/// A named reading of the predictor formula.
struct DarlVariant {
  std::string_view name;
  std::string_view formula;
  /// Throws Singularity when the variant's denominator vanishes.
  double (*evaluate)(const DarlInputs&);
};

/// Registered variants; the first entry is kAsPrinted.
std::span<const DarlVariant> darl_variants() noexcept;

/// Throws ValidationError for an unknown name.
const DarlVariant& find_variant(std::string_view name);

struct DarlResult {
  double t_sim = 0.0;
  bool out_of_range = false;  ///< t_sim outside [min(t_min, t_w), t_max]
};

/// T = [((t_max - t_min) / (t_phi - t_w)) * (1 / R²)] * t_w + t_phi for the
/// default mode, evaluated without clamping.
///
/// Throws InvalidCoefficient unless 0 < r_squared <= 1, and Singularity
/// when t_phi == t_w (or the selected variant's denominator is zero).
DarlResult darl_temperature(double t_max, double t_min, double t_w, double t_phi,
                            double r_squared, std::string_view mode = kAsPrinted);

// --- experiment execution -------------------------------------------------

struct PredictionRecord {
  prng::SeedValue seed;
  double target_length = 0.0;
  double t_phi = 0.0;
  double r_squared = 0.0;
  double t_sim = 0.0;
  bool out_of_range = false;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

struct SeedFit {
  prng::SeedValue seed;
  regression::LinearFit fit;
};

struct SeedDiagnostic {
  prng::SeedValue seed;
  std::string message;
};

struct RunResult {
  std::vector<PredictionRecord> records;  ///< ordered by (seed, target length)
  std::vector<SeedFit> fits;              ///< one per seed that produced records
  std::vector<SeedDiagnostic> diagnostics;  ///< seeds aborted by a numerical error
};

/// For each seed: one series over the full length grid, one OLS fit, then
/// the predictor at every target length. Seeds run concurrently, each with
/// its own generator; output order does not depend on scheduling.
///
/// Throws ValidationError for an invalid config. A numerical failure in one
/// seed drops that seed's records and adds a diagnostic.
RunResult run_configuration(const ExperimentConfig& config);

// --- validation against measurements --------------------------------------

struct ReferencePoint {
  double length = 0.0;  ///< m
  double t_obs = 0.0;   ///< °C
};

struct ComparisonRecord {
  prng::SeedValue seed;
  double target_length = 0.0;
  double t_sim = 0.0;
  double t_obs = 0.0;
  double delta_t = 0.0;             ///< |t_sim - t_obs|
  double relative_error_pct = 0.0;  ///< relative to t_obs
};

struct SeedRmse {
  prng::SeedValue seed;
  double rmse = 0.0;
};

struct Comparison {
  std::vector<ComparisonRecord> records;
  std::vector<SeedRmse> rmse_by_seed;
};

/// Lengths match within 1e-9 m. Throws MissingReference when a record's
/// target length has no reference observation.
Comparison compare_with_reference(std::span<const PredictionRecord> records,
                                  std::span<const ReferencePoint> reference);

struct SeedScore {
  prng::SeedValue seed;
  double mean_relative_error_pct = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;
};

/// Seeds ordered by mean relative error, ties by smaller seed. Only seeds
/// with the full set of comparisons (the largest per-seed count) are ranked.
/// Throws InsufficientSamples when `comparisons` is empty.
std::vector<SeedScore> rank_seeds(std::span<const ComparisonRecord> comparisons);

prng::SeedValue select_best_seed(std::span<const ComparisonRecord> comparisons);

}  // namespace darl::model
