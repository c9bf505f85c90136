#include "darl/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <string>

#include "darl/error.hpp"
#include "darl/stats.hpp"

namespace darl::model {

namespace {

constexpr double kLengthTolerance = 1e-9;

double as_printed(const DarlInputs& in) {
  const double denom = in.t_phi - in.t_w;
  if (denom == 0.0) {
    throw Error(ErrorCode::Singularity, "t_phi equals t_w");
  }
  return ((in.t_max - in.t_min) / denom) * (1.0 / in.r_squared) * in.t_w + in.t_phi;
}

// Reads the bracket as (t_max - t_min) / (t_phi * R²).
double phi_r2_bracket(const DarlInputs& in) {
  const double denom = in.t_phi * in.r_squared;
  if (denom == 0.0) {
    throw Error(ErrorCode::Singularity, "t_phi * R² is zero");
  }
  return ((in.t_max - in.t_min) / denom) * in.t_w + in.t_phi;
}

constexpr std::array kVariants{
    DarlVariant{kAsPrinted, "((t_max - t_min) / (t_phi - t_w)) * (1 / R^2) * t_w + t_phi",
                &as_printed},
    DarlVariant{"phi-r2-bracket", "((t_max - t_min) / (t_phi * R^2)) * t_w + t_phi",
                &phi_r2_bracket},
};

struct SeedOutcome {
  std::vector<PredictionRecord> records;
  std::optional<regression::LinearFit> fit;
  std::optional<std::string> diagnostic;
};

SeedOutcome run_seed(const ExperimentConfig& config, prng::SeedValue seed,
                     std::span<const double> targets) {
  SeedOutcome out;
  try {
    const SeriesOnGrid data = build_series(config, seed);
    const regression::LinearFit fit = regression::fit_ols(data.grid, data.series.values);
    std::vector<PredictionRecord> records;
    records.reserve(targets.size());
    for (const double x : targets) {
      const double t_phi = regression::predict_at(fit, x);
      const DarlResult r = darl_temperature(config.t_in, config.t_end, config.t_w, t_phi,
                                            fit.r_squared, config.darl_mode);
      records.push_back({seed, x, t_phi, fit.r_squared, r.t_sim, r.out_of_range});
    }
    out.records = std::move(records);
    out.fit = fit;
  } catch (const Error& e) {
    if (!is_numerical(e.code())) throw;
    out.diagnostic = "seed " + std::to_string(seed.value) + ": " + e.what();
  }
  return out;
}

}  // namespace

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::ValidationError, msg); };

  if (!std::isfinite(c.t_in) || !std::isfinite(c.t_end) || !std::isfinite(c.t_w) ||
      !std::isfinite(c.t_w_uncertainty) || !std::isfinite(c.total_length)) {
    fail("temperatures and lengths must be finite");
  }
  if (!(c.t_in > c.t_end)) fail("t_in must exceed t_end");
  if (c.t_w_uncertainty < 0.0) fail("t_w uncertainty must be non-negative");
  if (!(c.total_length > 0.0)) fail("total length must be positive");
  if (c.target_lengths.empty()) fail("at least one target length is required");
  for (const double x : c.target_lengths) {
    if (!(x > 0.0 && x < c.total_length)) {
      fail("target length " + std::to_string(x) + " outside (0, total length)");
    }
  }
  if (c.seeds.empty()) fail("at least one seed is required");
  std::set<prng::SeedValue> unique;
  for (const auto seed : c.seeds) {
    if (!prng::is_fermat_prime(seed)) {
      fail("seed " + std::to_string(seed.value) + " is not a Fermat prime");
    }
    if (!unique.insert(seed).second) fail("duplicate seed " + std::to_string(seed.value));
  }
  if (c.n_override && *c.n_override < 2) fail("n_override must be >= 2");
  find_variant(c.darl_mode);
}

std::size_t series_length(const ExperimentConfig& config) {
  if (config.n_override) return *config.n_override;
  const double n = std::round(100.0 * config.total_length);
  return n > 0.0 ? static_cast<std::size_t>(n) : 0;
}

SeriesOnGrid build_series(const ExperimentConfig& config, prng::SeedValue seed) {
  const std::size_t n = series_length(config);
  SeriesOnGrid out;
  out.series = prng::uniform_series(seed, n, config.t_end, config.t_in, config.sort_order);
  out.grid.resize(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.grid[i] = static_cast<double>(i) * config.total_length / last;
  }
  return out;
}

std::span<const DarlVariant> darl_variants() noexcept { return kVariants; }

const DarlVariant& find_variant(std::string_view name) {
  for (const auto& v : kVariants) {
    if (v.name == name) return v;
  }
  throw Error(ErrorCode::ValidationError, "unknown darl mode '" + std::string(name) + "'");
}

DarlResult darl_temperature(double t_max, double t_min, double t_w, double t_phi,
                            double r_squared, std::string_view mode) {
  const DarlVariant& variant = find_variant(mode);
  if (!(r_squared > 0.0 && r_squared <= 1.0)) {
    throw Error(ErrorCode::InvalidCoefficient, "R² must lie in (0, 1]");
  }
  const double t_sim = variant.evaluate({t_max, t_min, t_w, t_phi, r_squared});
  const double lower = std::min(t_min, t_w);
  return {t_sim, !(t_sim >= lower && t_sim <= t_max)};
}

RunResult run_configuration(const ExperimentConfig& config) {
  validate(config);

  std::vector<prng::SeedValue> seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());
  std::vector<double> targets = config.target_lengths;
  std::sort(targets.begin(), targets.end());

  std::vector<std::future<SeedOutcome>> pending;
  pending.reserve(seeds.size());
  for (const auto seed : seeds) {
    pending.push_back(std::async(std::launch::async, run_seed, std::cref(config), seed,
                                 std::span<const double>(targets)));
  }

  // Collected in seed order regardless of completion order.
  RunResult result;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SeedOutcome outcome = pending[i].get();
    if (outcome.diagnostic) {
      result.diagnostics.push_back({seeds[i], *outcome.diagnostic});
      continue;
    }
    result.fits.push_back({seeds[i], *outcome.fit});
    result.records.insert(result.records.end(), outcome.records.begin(), outcome.records.end());
  }
  return result;
}

Comparison compare_with_reference(std::span<const PredictionRecord> records,
                                  std::span<const ReferencePoint> reference) {
  Comparison out;
  out.records.reserve(records.size());
  std::map<prng::SeedValue, std::pair<std::vector<double>, std::vector<double>>> per_seed;

  for (const auto& rec : records) {
    const auto match = std::find_if(reference.begin(), reference.end(), [&](const auto& ref) {
      return std::abs(ref.length - rec.target_length) <= kLengthTolerance;
    });
    if (match == reference.end()) {
      throw Error(ErrorCode::MissingReference,
                  "no reference observation at length " + std::to_string(rec.target_length));
    }
    out.records.push_back({rec.seed, rec.target_length, rec.t_sim, match->t_obs,
                           std::abs(rec.t_sim - match->t_obs),
                           stats::relative_error(match->t_obs, rec.t_sim)});
    auto& [obs, sim] = per_seed[rec.seed];
    obs.push_back(match->t_obs);
    sim.push_back(rec.t_sim);
  }
  for (const auto& [seed, pair] : per_seed) {
    out.rmse_by_seed.push_back({seed, stats::rmse(pair.first, pair.second)});
  }
  return out;
}

std::vector<SeedScore> rank_seeds(std::span<const ComparisonRecord> comparisons) {
  if (comparisons.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "no comparisons to rank");
  }
  struct Acc {
    long double error_sum = 0.0L;
    long double sq_sum = 0.0L;
    std::size_t count = 0;
  };
  std::map<prng::SeedValue, Acc> acc;
  for (const auto& c : comparisons) {
    Acc& a = acc[c.seed];
    a.error_sum += c.relative_error_pct;
    const long double d = static_cast<long double>(c.t_sim) - c.t_obs;
    a.sq_sum += d * d;
    ++a.count;
  }
  std::size_t complete = 0;
  for (const auto& [seed, a] : acc) complete = std::max(complete, a.count);

  std::vector<SeedScore> scores;
  for (const auto& [seed, a] : acc) {
    if (a.count != complete) continue;
    const auto n = static_cast<long double>(a.count);
    scores.push_back({seed, static_cast<double>(a.error_sum / n),
                      static_cast<double>(std::sqrt(a.sq_sum / n)), a.count});
  }
  std::stable_sort(scores.begin(), scores.end(), [](const SeedScore& a, const SeedScore& b) {
    if (a.mean_relative_error_pct != b.mean_relative_error_pct) {
      return a.mean_relative_error_pct < b.mean_relative_error_pct;
    }
    return a.seed < b.seed;
  });
  return scores;
}

prng::SeedValue select_best_seed(std::span<const ComparisonRecord> comparisons) {
  return rank_seeds(comparisons).front().seed;
}

}  // namespace darl::model
