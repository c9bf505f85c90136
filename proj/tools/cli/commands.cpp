#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "darl/ingest.hpp"
#include "darl/number_format.hpp"
#include "darl/prng.hpp"
#include "darl/stats.hpp"
#include "report.hpp"

namespace darl::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalOptions {
  std::string out_dir = ".";
  std::string format = "table";
  std::optional<std::size_t> n_override;
  std::optional<std::string> sort_order;
  std::optional<std::string> darl_mode;
};

struct GenerateOptions {
  std::uint32_t seed = 0;
  std::size_t n = 0;
  double min = 0.0;
  double max = 0.0;
  std::optional<std::string> order;
  std::optional<std::string> out_path;
};

struct SourceOptions {
  std::optional<std::string> fixture;
  std::optional<std::string> config_path;
  std::optional<std::string> reference_path;
  std::vector<std::uint32_t> seeds;
};

struct ValidateOptions {
  std::optional<std::string> input_path;
  std::optional<std::string> fixture;
  std::vector<std::uint32_t> seeds;
  double alpha = stats::kDefaultAlpha;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

fs::path ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::IoError, "cannot create output directory '" + dir + "'");
  }
  return fs::path(dir);
}

void apply_overrides(model::ExperimentConfig& config, const GlobalOptions& g) {
  if (g.n_override) config.n_override = *g.n_override;
  if (g.sort_order) config.sort_order = prng::parse_sort_order(*g.sort_order);
  if (g.darl_mode) config.darl_mode = *g.darl_mode;
}

void apply_seed_filter(model::ExperimentConfig& config, const std::vector<std::uint32_t>& keep) {
  if (keep.empty()) return;
  std::vector<prng::SeedValue> seeds;
  for (const auto value : keep) {
    const prng::SeedValue seed{value};
    if (std::find(config.seeds.begin(), config.seeds.end(), seed) == config.seeds.end()) {
      throw Error(ErrorCode::ValidationError,
                  "seed " + std::to_string(value) + " is not part of this configuration");
    }
    if (std::find(seeds.begin(), seeds.end(), seed) == seeds.end()) seeds.push_back(seed);
  }
  config.seeds = std::move(seeds);
}

// A fixture is a built-in name or a path to a fixture file.
ingest::ExperimentFixture resolve_fixture(const std::string& name) {
  const auto names = ingest::builtin_fixture_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    return ingest::builtin_fixture(name);
  }
  if (fs::exists(name)) return ingest::load_fixture(read_file(name));
  return ingest::builtin_fixture(name);  // throws UnknownFixture
}

RunInput resolve_input(const SourceOptions& src, const GlobalOptions& g) {
  if (src.fixture.has_value() == src.config_path.has_value()) {
    throw Error(ErrorCode::ValidationError, "give exactly one of --fixture or --config");
  }
  RunInput input;
  if (src.fixture) {
    auto fx = resolve_fixture(*src.fixture);
    input.source = fx.name;
    input.config = fx.config;
    input.reference = fx.reference_points();
    input.published = fx.reference;
    input.published_rmse = fx.published_rmse;
  } else {
    input.source = fs::path(*src.config_path).stem().string();
    input.config = ingest::load_config(read_file(*src.config_path));
  }
  if (src.reference_path) {
    input.reference = ingest::parse_reference_csv(read_file(*src.reference_path));
    input.published.clear();
    input.published_rmse.reset();
  }
  apply_overrides(input.config, g);
  apply_seed_filter(input.config, src.seeds);
  model::validate(input.config);
  return input;
}

std::string profile_csv(const RunReport& report, prng::SeedValue seed) {
  std::string csv = "length_m,t_sim_c,t_obs_c\n";
  for (const auto& r : report.run.records) {
    if (r.seed != seed) continue;
    csv += format_number(r.target_length) + "," + format_number(r.t_sim) + ",";
    for (const auto& ref : report.input.reference) {
      if (std::abs(ref.length - r.target_length) <= 1e-9) {
        csv += format_number(ref.t_obs);
        break;
      }
    }
    csv += "\n";
  }
  return csv;
}

std::string comparison_csv(const RunReport& report) {
  if (!report.comparison) {
    std::string csv = "seed,target_length_m,t_phi_c,r_squared,t_sim_c,out_of_range\n";
    for (const auto& r : report.run.records) {
      csv += std::to_string(r.seed.value) + "," + format_number(r.target_length) + "," +
             format_number(r.t_phi) + "," + format_number(r.r_squared) + "," +
             format_number(r.t_sim) + "," + (r.out_of_range ? "1" : "0") + "\n";
    }
    return csv;
  }
  std::string csv = "seed,target_length_m,t_sim_c,t_obs_c,delta_t_c,relative_error_pct\n";
  for (const auto& c : report.comparison->records) {
    csv += std::to_string(c.seed.value) + "," + format_number(c.target_length) + "," +
           format_number(c.t_sim) + "," + format_number(c.t_obs) + "," +
           format_number(c.delta_t) + "," + format_number(c.relative_error_pct) + "\n";
  }
  return csv;
}

int cmd_generate(const GenerateOptions& o, const GlobalOptions& g, std::ostream& out) {
  const auto order =
      prng::parse_sort_order(o.order ? *o.order : g.sort_order.value_or("ascending"));
  // Validate before touching the filesystem so a bad request writes nothing.
  const auto series = prng::uniform_series(prng::SeedValue{o.seed}, o.n, o.min, o.max, order);

  fs::path path;
  if (o.out_path) {
    path = *o.out_path;
  } else {
    path = ensure_dir(g.out_dir) / ("series_seed" + std::to_string(o.seed) + ".csv");
  }
  std::string csv = "Ordered_Value\n";
  for (const double v : series.values) csv += format_number(v) + "\n";
  write_file(path, csv);
  out << "wrote " << series.values.size() << " values to " << path.string() << "\n";
  return kExitSuccess;
}

int cmd_run(const SourceOptions& src, const GlobalOptions& g, std::ostream& out,
            std::ostream& err) {
  const RunReport report = build_run_report(resolve_input(src, g));
  const fs::path dir = ensure_dir(g.out_dir);
  const std::string json = to_json(report).dump(2) + "\n";
  write_file(dir / (report.input.source + "_report.json"), json);
  for (const auto& sf : report.run.fits) {
    write_file(dir / (report.input.source + "_seed" + std::to_string(sf.seed.value) +
                      "_profile.csv"),
               profile_csv(report, sf.seed));
  }

  if (g.format == "json") {
    out << json;
  } else if (g.format == "csv") {
    out << comparison_csv(report);
  } else {
    print_run_table(report, out);
  }

  for (const auto& d : report.run.diagnostics) err << "darl: " << d.message << "\n";
  return report.run.diagnostics.empty() ? kExitSuccess : kExitNumerical;
}

int cmd_sweep(const SourceOptions& src, const GlobalOptions& g, std::ostream& out,
              std::ostream& err) {
  RunInput input = resolve_input(src, g);
  if (input.reference.empty()) {
    throw Error(ErrorCode::ValidationError,
                "sweep needs reference observations (use a fixture or --reference)");
  }
  const RunReport report = build_run_report(std::move(input));
  const fs::path dir = ensure_dir(g.out_dir);
  const std::string json = ranking_json(report).dump(2) + "\n";
  write_file(dir / (report.input.source + "_sweep.json"), json);

  if (g.format == "json") {
    out << json;
  } else if (g.format == "csv") {
    out << "rank,seed,mean_relative_error_pct,rmse_c\n";
    for (std::size_t i = 0; i < report.ranking.size(); ++i) {
      const auto& s = report.ranking[i];
      out << i + 1 << "," << s.seed.value << "," << format_number(s.mean_relative_error_pct)
          << "," << format_number(s.rmse) << "\n";
    }
  } else {
    print_ranking_table(report, out);
  }
  for (const auto& d : report.run.diagnostics) err << "darl: " << d.message << "\n";
  if (report.ranking.empty()) return kExitNumerical;
  return report.run.diagnostics.empty() ? kExitSuccess : kExitNumerical;
}

struct NamedSeries {
  std::string label;
  std::vector<double> values;
};

int cmd_validate(const ValidateOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (o.input_path.has_value() == o.fixture.has_value()) {
    throw Error(ErrorCode::ValidationError, "give exactly one of --input or --fixture");
  }
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) {
    throw Error(ErrorCode::ValidationError, "--alpha must lie in (0, 1)");
  }
  std::vector<NamedSeries> all;
  if (o.input_path) {
    all.push_back({*o.input_path, ingest::parse_series_csv(read_file(*o.input_path))});
  } else {
    auto fx = resolve_fixture(*o.fixture);
    apply_overrides(fx.config, g);
    apply_seed_filter(fx.config, o.seeds);
    model::validate(fx.config);
    for (const auto seed : fx.config.seeds) {
      all.push_back({fx.name + " seed " + std::to_string(seed.value),
                     model::build_series(fx.config, seed).series.values});
    }
  }

  ordered_json results = ordered_json::array();
  std::ostringstream table;
  for (const auto& s : all) {
    const auto sw = stats::shapiro_wilk(s.values, o.alpha);
    const auto q = stats::quartile_summary(s.values);
    const std::string verdict = sw.rejects_normality()
                                    ? "normality rejected (p < " + format_number(o.alpha) + ")"
                                    : "normality not rejected (p >= " + format_number(o.alpha) + ")";
    results.push_back({{"series", s.label},
                       {"n", sw.n},
                       {"w", number_json(sw.w_statistic)},
                       {"p_value", number_json(sw.p_value)},
                       {"alpha", number_json(sw.alpha)},
                       {"normality_rejected", sw.rejects_normality()},
                       {"quartiles",
                        {{"q1", number_json(q.q1)},
                         {"q2", number_json(q.q2)},
                         {"q3", number_json(q.q3)},
                         {"iqr", number_json(q.iqr)}}}});
    table << s.label << "\n"
          << "  n=" << sw.n << "  W=" << format_number(sw.w_statistic)
          << "  p=" << format_number(sw.p_value) << "\n"
          << "  " << verdict << "\n"
          << "  q1=" << format_number(q.q1) << "  q2=" << format_number(q.q2)
          << "  q3=" << format_number(q.q3) << "  iqr=" << format_number(q.iqr) << "\n";
  }

  if (g.format == "json") {
    ordered_json doc;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["results"] = results;
    out << doc.dump(2) << "\n";
  } else if (g.format == "csv") {
    out << "series,n,w,p_value,normality_rejected,q1,q2,q3,iqr\n";
    for (const auto& r : results) {
      out << r["series"].get<std::string>() << "," << r["n"].get<std::size_t>() << ","
          << format_number(r["w"].get<double>()) << ","
          << format_number(r["p_value"].get<double>()) << ","
          << (r["normality_rejected"].get<bool>() ? 1 : 0) << ","
          << format_number(r["quartiles"]["q1"].get<double>()) << ","
          << format_number(r["quartiles"]["q2"].get<double>()) << ","
          << format_number(r["quartiles"]["q3"].get<double>()) << ","
          << format_number(r["quartiles"]["iqr"].get<double>()) << "\n";
    }
  } else {
    out << table.str();
  }
  return kExitSuccess;
}

int cmd_fixtures(const std::optional<std::string>& show, const GlobalOptions& g,
                 std::ostream& out) {
  if (show) {
    out << ingest::serialize_fixture(resolve_fixture(*show));
    return kExitSuccess;
  }
  if (g.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& name : ingest::builtin_fixture_names()) list.push_back(name);
    out << ordered_json{{"fixtures", list}}.dump(2) << "\n";
    return kExitSuccess;
  }
  for (const auto& name : ingest::builtin_fixture_names()) {
    const auto fx = ingest::builtin_fixture(name);
    out << name << "  t_in=" << format_number(fx.config.t_in)
        << " t_end=" << format_number(fx.config.t_end) << " t_w=" << format_number(fx.config.t_w)
        << " L=" << format_number(fx.config.total_length) << " targets="
        << fx.config.target_lengths.size() << " seeds=" << fx.config.seeds.size() << "\n";
  }
  return kExitSuccess;
}

void add_source_options(CLI::App* cmd, SourceOptions& src) {
  cmd->add_option("--fixture", src.fixture, "Built-in fixture name or fixture file path");
  cmd->add_option("--config", src.config_path, "Experiment config JSON");
  cmd->add_option("--reference", src.reference_path, "Reference CSV (length_m,t_obs_c)");
  cmd->add_option("--seeds", src.seeds, "Restrict to these seeds")->delimiter(',');
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  if (code == ErrorCode::IoError) return kExitIo;
  if (is_numerical(code)) return kExitNumerical;
  return kExitUsage;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DARL air-temperature model: series generation, runs, seed sweeps, validation",
               "darl"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--out-dir", g.out_dir, "Directory for written files")->capture_default_str();
  app.add_option("--format", g.format, "Console output format")
      ->check(CLI::IsMember({"json", "table", "csv"}))
      ->capture_default_str();
  app.add_option("--n-override", g.n_override, "Series length instead of round(100 * L)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  app.add_option("--sort-order", g.sort_order, "Series order along increasing length")
      ->check(CLI::IsMember({"asc", "desc", "ascending", "descending"}));
  app.add_option("--darl-mode", g.darl_mode, "Predictor variant (as-printed, phi-r2-bracket)");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a sorted uniform series as CSV");
  generate->add_option("--seed", gen.seed, "Generator seed")->required();
  generate->add_option("--n", gen.n, "Number of values")->required();
  generate->add_option("--min", gen.min, "Lower bound (°C)")->required();
  generate->add_option("--max", gen.max, "Upper bound (°C)")->required();
  generate->add_option("--order", gen.order, "asc or desc (default asc)")
      ->check(CLI::IsMember({"asc", "desc", "ascending", "descending"}));
  generate->add_option("--out", gen.out_path, "Output CSV path");

  SourceOptions run_src;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write its report");
  add_source_options(run_cmd, run_src);

  SourceOptions sweep_src;
  auto* sweep = app.add_subcommand("sweep", "Rank seeds by mean relative error");
  add_source_options(sweep, sweep_src);

  ValidateOptions val;
  auto* validate = app.add_subcommand("validate", "Shapiro-Wilk and quartiles for a series");
  validate->add_option("--input", val.input_path, "Series CSV (one value per line)");
  validate->add_option("--fixture", val.fixture, "Validate every seed's series of a fixture");
  validate->add_option("--seeds", val.seeds, "Restrict to these seeds")->delimiter(',');
  validate->add_option("--alpha", val.alpha, "Significance level")->capture_default_str();

  std::optional<std::string> show;
  auto* fixtures = app.add_subcommand("fixtures", "List built-in fixtures");
  fixtures->add_option("--show", show, "Print one fixture as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, g, out);
    if (*run_cmd) return cmd_run(run_src, g, out, err);
    if (*sweep) return cmd_sweep(sweep_src, g, out, err);
    if (*validate) return cmd_validate(val, g, out);
    if (*fixtures) return cmd_fixtures(show, g, out);
  } catch (const Error& e) {
    err << "darl: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace darl::cli
