#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "darl/error.hpp"
#include "darl/number_format.hpp"

namespace darl::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kLengthTolerance = 1e-9;

const model::PredictionRecord* find_record(const model::RunResult& run, prng::SeedValue seed,
                                           double length) {
  for (const auto& r : run.records) {
    if (r.seed == seed && std::abs(r.target_length - length) <= kLengthTolerance) return &r;
  }
  return nullptr;
}

VariantSummary summarize_variant(const model::DarlVariant& variant, const RunReport& report) {
  const auto& cfg = report.input.config;
  VariantSummary out{std::string(variant.name), std::string(variant.formula),
                     variant.name == cfg.darl_mode, {}, std::nullopt, 0};
  std::vector<double> obs;
  std::vector<double> sim;
  for (const auto& p : report.input.published) {
    PublishedRow row{p.length, p.published_seed, p.t_obs, p.published_delta_t,
                     p.published_relative_error_pct};
    if (const auto* rec = find_record(report.run, p.published_seed, p.length)) {
      try {
        const auto r = model::darl_temperature(cfg.t_in, cfg.t_end, cfg.t_w, rec->t_phi,
                                               rec->r_squared, variant.name);
        row.t_sim = r.t_sim;
        row.delta_t = std::abs(r.t_sim - p.t_obs);
        row.relative_error_pct = stats::relative_error(p.t_obs, r.t_sim);
        row.out_of_range = r.out_of_range;
        out.out_of_range_count += r.out_of_range ? 1 : 0;
        obs.push_back(p.t_obs);
        sim.push_back(r.t_sim);
      } catch (const Error& e) {
        if (!is_numerical(e.code())) throw;
      }
    }
    out.rows.push_back(row);
  }
  if (!obs.empty()) out.published_seed_rmse = stats::rmse(obs, sim);
  return out;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? number_json(*v) : ordered_json(nullptr);
}

ordered_json quartiles_json(const stats::QuartileSummary& q) {
  return {{"q1", number_json(q.q1)},
          {"q2", number_json(q.q2)},
          {"q3", number_json(q.q3)},
          {"iqr", number_json(q.iqr)}};
}

ordered_json config_json(const model::ExperimentConfig& c) {
  return ordered_json::parse(ingest::serialize_config(c));
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string fixed(const std::optional<double>& v, int digits) {
  return v ? fixed(*v, digits) : std::string("-");
}

}  // namespace

ordered_json number_json(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round_significant(value);
}

RunReport build_run_report(RunInput input) {
  const auto start = std::chrono::steady_clock::now();

  RunReport report;
  report.input = std::move(input);
  const auto& cfg = report.input.config;
  report.run = model::run_configuration(cfg);

  for (const auto& sf : report.run.fits) {
    const auto data = model::build_series(cfg, sf.seed);
    SeriesSummary s{sf.seed, data.series.values.size(), sf.fit, std::nullopt,
                    stats::quartile_summary(data.series.values)};
    if (s.n <= 5000) s.normality = stats::shapiro_wilk(data.series.values);
    report.series.push_back(s);
  }

  std::map<double, std::vector<double>> by_length;
  for (const auto& r : report.run.records) by_length[r.target_length].push_back(r.t_sim);
  for (const auto& [length, values] : by_length) {
    report.spreads.push_back({length, values.size(), stats::quartile_summary(values)});
  }

  if (!report.input.reference.empty()) {
    report.comparison = model::compare_with_reference(report.run.records, report.input.reference);
    if (!report.comparison->records.empty()) {
      report.ranking = model::rank_seeds(report.comparison->records);
    }
  }

  if (!report.input.published.empty()) {
    for (const auto& v : model::darl_variants()) {
      report.variants.push_back(summarize_variant(v, report));
    }
  }

  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ordered_json ranking_json(const RunReport& report) {
  ordered_json ranking = ordered_json::array();
  for (std::size_t i = 0; i < report.ranking.size(); ++i) {
    const auto& s = report.ranking[i];
    ranking.push_back({{"rank", i + 1},
                       {"seed", s.seed.value},
                       {"mean_relative_error_pct", number_json(s.mean_relative_error_pct)},
                       {"rmse_c", number_json(s.rmse)},
                       {"count", s.count}});
  }
  ordered_json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["source"] = report.input.source;
  doc["criterion"] = "mean relative error, ties to the smaller seed";
  doc["ranking"] = ranking;
  doc["best_seed"] =
      report.ranking.empty() ? ordered_json(nullptr) : ordered_json(report.ranking.front().seed.value);
  return doc;
}

ordered_json to_json(const RunReport& report) {
  const auto& in = report.input;
  ordered_json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["source"] = in.source;
  doc["config"] = config_json(in.config);
  doc["series_length"] = model::series_length(in.config);

  ordered_json predictions = ordered_json::array();
  for (const auto& r : report.run.records) {
    predictions.push_back({{"seed", r.seed.value},
                           {"target_length_m", number_json(r.target_length)},
                           {"t_phi_c", number_json(r.t_phi)},
                           {"r_squared", number_json(r.r_squared)},
                           {"t_sim_c", number_json(r.t_sim)},
                           {"out_of_range", r.out_of_range}});
  }
  doc["predictions"] = predictions;

  ordered_json diagnostics = ordered_json::array();
  for (const auto& d : report.run.diagnostics) {
    diagnostics.push_back({{"seed", d.seed.value}, {"message", d.message}});
  }
  doc["diagnostics"] = diagnostics;

  ordered_json series = ordered_json::array();
  for (const auto& s : report.series) {
    ordered_json normality = nullptr;
    if (s.normality) {
      normality = {{"test", "shapiro-wilk"},
                   {"w", number_json(s.normality->w_statistic)},
                   {"p_value", number_json(s.normality->p_value)},
                   {"alpha", number_json(s.normality->alpha)},
                   {"normality_rejected", s.normality->rejects_normality()}};
    }
    series.push_back({{"seed", s.seed.value},
                      {"n", s.n},
                      {"fit",
                       {{"alpha_c", number_json(s.fit.alpha)},
                        {"beta_c_per_m", number_json(s.fit.beta)},
                        {"r_squared", number_json(s.fit.r_squared)}}},
                      {"normality", normality},
                      {"quartiles", quartiles_json(s.quartiles)}});
  }
  doc["series"] = series;

  ordered_json spreads = ordered_json::array();
  for (const auto& t : report.spreads) {
    spreads.push_back({{"target_length_m", number_json(t.length)},
                       {"seeds", t.count},
                       {"t_sim_quartiles", quartiles_json(t.t_sim)}});
  }
  doc["target_spread"] = spreads;

  if (report.comparison) {
    ordered_json rows = ordered_json::array();
    for (const auto& c : report.comparison->records) {
      rows.push_back({{"seed", c.seed.value},
                      {"target_length_m", number_json(c.target_length)},
                      {"t_sim_c", number_json(c.t_sim)},
                      {"t_obs_c", number_json(c.t_obs)},
                      {"delta_t_c", number_json(c.delta_t)},
                      {"relative_error_pct", number_json(c.relative_error_pct)}});
    }
    ordered_json rmse = ordered_json::array();
    for (const auto& r : report.comparison->rmse_by_seed) {
      rmse.push_back({{"seed", r.seed.value}, {"rmse_c", number_json(r.rmse)}});
    }
    doc["comparisons"] = rows;
    doc["rmse_by_seed"] = rmse;
    doc["best_seed"] = report.ranking.empty() ? ordered_json(nullptr)
                                              : ordered_json(report.ranking.front().seed.value);
  } else {
    doc["comparisons"] = nullptr;
    doc["rmse_by_seed"] = nullptr;
    doc["best_seed"] = nullptr;
  }

  if (!report.variants.empty()) {
    ordered_json variants = ordered_json::array();
    for (const auto& v : report.variants) {
      ordered_json rows = ordered_json::array();
      for (const auto& r : v.rows) {
        const std::optional<double> gap =
            r.relative_error_pct
                ? std::optional<double>(*r.relative_error_pct - r.published_relative_error_pct)
                : std::nullopt;
        rows.push_back({{"target_length_m", number_json(r.length)},
                        {"seed", r.seed.value},
                        {"t_obs_c", number_json(r.t_obs)},
                        {"published_delta_t_c", number_json(r.published_delta_t)},
                        {"published_relative_error_pct",
                         number_json(r.published_relative_error_pct)},
                        {"t_sim_c", optional_number(r.t_sim)},
                        {"delta_t_c", optional_number(r.delta_t)},
                        {"relative_error_pct", optional_number(r.relative_error_pct)},
                        {"relative_error_gap_pct", optional_number(gap)},
                        {"out_of_range", r.out_of_range}});
      }
      variants.push_back({{"darl_mode", v.name},
                          {"formula", v.formula},
                          {"active", v.active},
                          {"rows", rows},
                          {"rmse_c", optional_number(v.published_seed_rmse)},
                          {"published_rmse_c", optional_number(in.published_rmse)},
                          {"out_of_range_rows", v.out_of_range_count}});
    }
    doc["published_comparison"] = variants;
  } else {
    doc["published_comparison"] = nullptr;
  }
  return doc;
}

void print_run_table(const RunReport& report, std::ostream& out) {
  const auto& cfg = report.input.config;
  out << "darl run: " << report.input.source << "  (n=" << model::series_length(cfg)
      << ", sort=" << prng::to_string(cfg.sort_order) << ", mode=" << cfg.darl_mode << ")\n\n";

  out << "Predictions\n";
  out << std::setw(7) << "seed" << std::setw(10) << "length_m" << std::setw(11) << "t_phi_c"
      << std::setw(11) << "R^2" << std::setw(12) << "t_sim_c" << "  range\n";
  for (const auto& r : report.run.records) {
    out << std::setw(7) << r.seed.value << std::setw(10) << fixed(r.target_length, 2)
        << std::setw(11) << fixed(r.t_phi, 4) << std::setw(11) << fixed(r.r_squared, 6)
        << std::setw(12) << fixed(r.t_sim, 4) << "  " << (r.out_of_range ? "OUT" : "ok") << "\n";
  }
  for (const auto& d : report.run.diagnostics) out << "  ! " << d.message << "\n";

  out << "\nSeries normality (Shapiro-Wilk, alpha 0.05) and quartiles\n";
  for (const auto& s : report.series) {
    out << std::setw(7) << s.seed.value << "  n=" << s.n;
    if (s.normality) {
      out << "  W=" << fixed(s.normality->w_statistic, 5) << "  p=" << std::setprecision(4)
          << s.normality->p_value << "  "
          << (s.normality->rejects_normality() ? "rejected" : "not rejected");
    } else {
      out << "  (n above 5000, test skipped)";
    }
    out << "  q1=" << fixed(s.quartiles.q1, 3) << " q2=" << fixed(s.quartiles.q2, 3)
        << " q3=" << fixed(s.quartiles.q3, 3) << " iqr=" << fixed(s.quartiles.iqr, 3) << "\n";
  }

  if (report.comparison) {
    out << "\nComparison (seed, length, dT, relative error)\n";
    out << std::setw(7) << "seed" << std::setw(10) << "length_m" << std::setw(12) << "t_sim_c"
        << std::setw(10) << "t_obs_c" << std::setw(12) << "dT_c" << std::setw(12) << "err_%"
        << "\n";
    for (const auto& c : report.comparison->records) {
      out << std::setw(7) << c.seed.value << std::setw(10) << fixed(c.target_length, 2)
          << std::setw(12) << fixed(c.t_sim, 4) << std::setw(10) << fixed(c.t_obs, 2)
          << std::setw(12) << fixed(c.delta_t, 4) << std::setw(12)
          << fixed(c.relative_error_pct, 3) << "\n";
    }
    out << "RMSE by seed:";
    for (const auto& r : report.comparison->rmse_by_seed) {
      out << "  " << r.seed.value << "=" << fixed(r.rmse, 4);
    }
    out << "\n";
  }

  for (const auto& v : report.variants) {
    out << "\nPublished comparison, mode " << v.name << (v.active ? " (active)" : "") << ": "
        << v.formula << "\n";
    out << std::setw(10) << "length_m" << std::setw(6) << "seed" << std::setw(10) << "pub_dT"
        << std::setw(10) << "pub_err" << std::setw(12) << "dT_c" << std::setw(12) << "err_%"
        << "\n";
    for (const auto& r : v.rows) {
      out << std::setw(10) << fixed(r.length, 2) << std::setw(6) << r.seed.value << std::setw(10)
          << fixed(r.published_delta_t, 2) << std::setw(10)
          << fixed(r.published_relative_error_pct, 2) << std::setw(12) << fixed(r.delta_t, 4)
          << std::setw(12) << fixed(r.relative_error_pct, 3) << (r.out_of_range ? "  OUT" : "")
          << "\n";
    }
    out << "RMSE " << fixed(v.published_seed_rmse, 4) << " (published "
        << fixed(report.input.published_rmse, 4) << ")\n";
  }

  out << "\nwall time " << fixed(report.wall_time_ms, 2) << " ms\n";
}

void print_ranking_table(const RunReport& report, std::ostream& out) {
  out << "darl sweep: " << report.input.source << "\n";
  out << std::setw(6) << "rank" << std::setw(8) << "seed" << std::setw(14) << "mean_err_%"
      << std::setw(12) << "rmse_c" << "\n";
  for (std::size_t i = 0; i < report.ranking.size(); ++i) {
    const auto& s = report.ranking[i];
    out << std::setw(6) << i + 1 << std::setw(8) << s.seed.value << std::setw(14)
        << fixed(s.mean_relative_error_pct, 4) << std::setw(12) << fixed(s.rmse, 4) << "\n";
  }
  if (!report.ranking.empty()) out << "best seed: " << report.ranking.front().seed.value << "\n";
}

}  // namespace darl::cli
